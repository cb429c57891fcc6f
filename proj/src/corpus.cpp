#include "toep/corpus.hpp"

#include <cmath>
#include <sstream>

namespace toep {

LaurentSymbol symbol_b0() { return LaurentSymbol::from_coeff_map({{-1, 1.0}, {1, 1.0}}); }

LaurentSymbol symbol_b1(int n) {
    return LaurentSymbol::from_coeff_map({{-1, static_cast<double>(n)}, {n, -1.0}});
}

LaurentSymbol symbol_b2() { return LaurentSymbol::from_coeff_map({{-1, 1.0}, {2, 1.0}}); }

LaurentSymbol symbol_b3(int q) {
    return LaurentSymbol::from_coeff_map({{q + 1, 1.0}, {1, 4.0}, {-q + 1, 1.0}});
}

LaurentSymbol symbol_ellipse() { return LaurentSymbol::from_coeff_map({{-1, 1.0}, {1, 2.0}}); }

LaurentSymbol symbol_grace() { return LaurentSymbol::from_coeff_map({{-1, 1.0}, {2, 2.0}}); }

LaurentSymbol symbol_grace_selfint() {
    // zeta on the unit circle with |zeta + 1| < 1 makes b(zeta) = b(1), while
    // |b_2| = 1/|zeta(zeta+1)| > 1 keeps the apolarity certificate applicable.
    const cplx zeta = unit(3.0 * pi / 4.0);
    const cplx b2 = 1.0 / (zeta * (zeta + 1.0));
    return LaurentSymbol::from_coeff_map({{-1, cplx{1.0, 0.0}}, {2, b2}});
}

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = [] {
        auto entry = [](std::string name, LaurentSymbol b) {
            return CorpusEntry{std::move(name), std::move(b), {}, {}, {}, {}, {}};
        };
        std::vector<CorpusEntry> v;

        CorpusEntry b0 = entry("b0", symbol_b0());
        b0.expect_lj = LJVerdict::SelfIntersecting;
        b0.expect_degenerate = true;
        b0.expect_regularity = RegularityVerdict::Irregular;
        v.push_back(std::move(b0));

        for (int n : {2, 3}) {
            CorpusEntry e = entry("b1_n" + std::to_string(n), symbol_b1(n));
            e.expect_lj = LJVerdict::JordanWithCusps;
            e.expect_cusp_count = n + 1;
            v.push_back(std::move(e));
        }

        CorpusEntry b2 = entry("b2", symbol_b2());
        b2.expect_lj = LJVerdict::SelfIntersecting;
        b2.expect_degenerate = false;
        b2.expect_intersection_value = cplx{0.0, 0.0};
        v.push_back(std::move(b2));

        for (int q : {2, 3}) {
            CorpusEntry e = entry("b3_q" + std::to_string(q), symbol_b3(q));
            e.expect_lj = LJVerdict::LJ;
            e.expect_regularity = RegularityVerdict::Regular;
            v.push_back(std::move(e));
        }

        CorpusEntry ell = entry("ellipse", symbol_ellipse());
        ell.expect_lj = LJVerdict::LJ;
        ell.expect_regularity = RegularityVerdict::Regular;
        v.push_back(std::move(ell));

        CorpusEntry gr = entry("grace", symbol_grace());
        gr.expect_regularity = RegularityVerdict::Regular;
        v.push_back(std::move(gr));

        CorpusEntry gs = entry("grace_selfint", symbol_grace_selfint());
        gs.expect_lj = LJVerdict::SelfIntersecting;
        gs.expect_regularity = RegularityVerdict::Regular;
        v.push_back(std::move(gs));

        return v;
    }();
    return entries;
}

std::vector<CorpusOutcome> run_corpus(const ScanConfig& cfg) {
    std::vector<CorpusOutcome> out;
    for (const CorpusEntry& e : corpus()) {
        CorpusOutcome o;
        o.name = e.name;
        std::ostringstream fail;

        const LJReport lj = classify_lj(e.symbol, cfg);
        o.lj = to_string(lj.verdict);
        if (e.expect_lj && lj.verdict != *e.expect_lj)
            fail << "lj verdict " << o.lj << " != " << to_string(*e.expect_lj) << "; ";
        if (e.expect_degenerate && lj.degenerate_segment != *e.expect_degenerate)
            fail << "degenerate_segment mismatch; ";
        if (e.expect_cusp_count &&
            static_cast<int>(lj.cusps.size()) != *e.expect_cusp_count)
            fail << "cusp count " << lj.cusps.size() << " != " << *e.expect_cusp_count << "; ";
        if (e.expect_intersection_value) {
            bool found = false;
            for (const IntersectionPair& p : lj.self_intersections)
                found = found || std::abs(p.w - *e.expect_intersection_value) <= 1e-8;
            if (!found) fail << "expected intersection value not located; ";
        }

        const RegularityReport reg = regularity_scan(e.symbol, cfg);
        o.regularity = to_string(reg.verdict);
        if (e.expect_regularity && reg.verdict != *e.expect_regularity)
            fail << "regularity " << o.regularity << " != " << to_string(*e.expect_regularity)
                 << "; ";

        o.detail = fail.str();
        o.ok = o.detail.empty();
        out.push_back(o);
    }
    return out;
}

} // namespace toep
