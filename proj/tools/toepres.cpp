#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>

#include <CLI11.hpp>

#include "toep/corpus.hpp"
#include "toep/errors.hpp"
#include "toep/io.hpp"
#include "toep/parallel.hpp"

namespace {

using namespace toep;

cplx parse_complex_flag(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw ConfigError("--w: expected RE,IM");
    try {
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ConfigError("--w: expected RE,IM");
    }
}

struct OutStream {
    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &std::cout;

    explicit OutStream(const std::string& path) {
        if (!path.empty()) {
            file = std::make_unique<std::ofstream>(path);
            if (!*file) throw ConfigError("cannot open output file: " + path);
            os = file.get();
        }
    }
    std::ostream& get() { return *os; }
};

ScanConfig config_or_default(const std::string& path) {
    if (path.empty()) return ScanConfig{};
    return load_config(path);
}

void emit_json(std::ostream& os, const json& j) { os << j.dump(2) << "\n"; }

// Grid points for `scan`: explicit box when configured, else offset rings.
std::vector<cplx> scan_grid(const LaurentSymbol& b, const ScanConfig& cfg) {
    std::vector<cplx> pts;
    if (cfg.grid) {
        const GridBox& g = *cfg.grid;
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                pts.emplace_back(g.x0 + (g.x1 - g.x0) * ix / (g.nx - 1),
                                 g.y0 + (g.y1 - g.y0) * iy / (g.ny - 1));
        return pts;
    }
    const double diam = curve_diameter(b);
    for (int level = 1; level <= std::min(cfg.max_level, 6); ++level)
        for (const cplx& w : curve_offset_grid(b, diam * std::pow(2.0, -level), cfg.ring_points))
            pts.push_back(w);
    return pts;
}

int cmd_scan(const LaurentSymbol& b, const ScanConfig& cfg, std::ostream& os) {
    const std::vector<cplx> pts = scan_grid(b, cfg);

    struct Row {
        bool keep = false;
        cplx w;
        int wind = 0;
        double dist = 0, norm_max = 0, extrap = 0, krein = 0, lrg = 0, qrg = 0;
        bool lower_ok = false;
    };
    std::vector<Row> rows(pts.size());
    parallel_for(pts.size(), [&](size_t i) {
        Row& r = rows[i];
        r.w = pts[i];
        try {
            if (!in_resolvent_set(b, r.w)) return;
            r.wind = 0;
            ResolventSample s =
                resolvent_norm_extrapolated(b, r.w, cfg.section_schedule, cfg.seed);
            if (s.dist <= 0.0) return;
            double nmax = 0.0;
            for (const auto& [n, v] : s.norm_estimates) nmax = std::max(nmax, v);
            r.dist = s.dist;
            r.norm_max = nmax;
            r.extrap = s.extrapolated;
            r.krein = b.two_sided() ? krein_bound(b, r.w) : std::nan("");
            r.lrg = s.lrg_ratio;
            r.qrg = s.qrg_ratio;
            r.lower_ok = lower_bound_check(s);
            r.keep = true;
        } catch (const ToepError&) {
            r.keep = false;
        }
    });

    CsvWriter csv(os, {"w_re", "w_im", "dist", "winding", "normN_max", "extrapolated", "krein",
                       "lrg_ratio", "qrg_ratio", "lower_ok"});
    for (const Row& r : rows) {
        if (!r.keep) continue;
        csv.col(r.w.real()).col(r.w.imag()).col(r.dist).col(r.wind).col(r.norm_max);
        csv.col(r.extrap).col(r.krein).col(r.lrg).col(r.qrg).col(r.lower_ok ? 1 : 0);
        csv.endrow();
    }
    return 0;
}

int cmd_portrait(const LaurentSymbol& b, const GridBox& g, int N, std::uint64_t seed,
                 std::ostream& os) {
    CsvWriter csv(os, {"w_re", "w_im", "norm"});
    std::vector<double> row(static_cast<size_t>(g.nx));
    for (int iy = 0; iy < g.ny; ++iy) {
        const double y = g.y0 + (g.y1 - g.y0) * iy / (g.ny - 1);
        parallel_for(static_cast<size_t>(g.nx), [&](size_t ix) {
            const cplx w(g.x0 + (g.x1 - g.x0) * static_cast<double>(ix) / (g.nx - 1), y);
            try {
                row[ix] = resolvent_norm(b, w, N, seed);
            } catch (const ToepError&) {
                row[ix] = std::numeric_limits<double>::infinity();
            }
        });
        for (int ix = 0; ix < g.nx; ++ix) {
            csv.col(g.x0 + (g.x1 - g.x0) * ix / (g.nx - 1)).col(y).col(row[static_cast<size_t>(ix)]);
            csv.endrow();
        }
    }
    return 0;
}

int cmd_qrg_ray(const WienerSymbol& wb, double angle, const ScanConfig& cfg, std::ostream& os) {
    const LaurentSymbol b = wb.truncate();
    const cplx z = unit(angle);
    const cplx tangent = cplx(0.0, 1.0) * z * b.eval_derivative(z);
    if (std::abs(tangent) < 1e-12) throw ConfigError("--trace-ray: tangent degenerates at angle");
    const cplx normal = cplx(0.0, 1.0) * tangent / std::abs(tangent);
    const cplx base = b.eval(z);

    double side = 1.0;
    if (!in_resolvent_set(b, base + 0.05 * normal)) {
        if (!in_resolvent_set(b, base - 0.05 * normal))
            throw ConfigError("--trace-ray: neither normal side lies in the resolvent set");
        side = -1.0;
    }

    CsvWriter csv(os, {"dist", "qrg_bound", "oracle_norm", "ratio"});
    for (double d = 0.1; d >= 0.99e-4; d *= std::pow(10.0, -0.25)) {
        const cplx w = base + side * d * normal;
        if (!in_resolvent_set(b, w)) continue;
        const QRGRecord rec = qrg_record(wb, w, cfg.fft_size);
        const ResolventSample s =
            resolvent_norm_extrapolated(b, w, cfg.section_schedule, cfg.seed);
        csv.col(rec.dist)
            .col(rec.qrg_bound)
            .col(s.extrapolated)
            .col(rec.qrg_bound * rec.dist * rec.dist / (rec.dist + 1.0));
        csv.endrow();
    }
    return 0;
}

int cmd_corpus(const ScanConfig& cfg, std::ostream& os) {
    const std::vector<CorpusOutcome> outcomes = run_corpus(cfg);
    size_t width = 4;
    for (const CorpusOutcome& o : outcomes) width = std::max(width, o.name.size());
    os << std::left << std::setw(static_cast<int>(width) + 2) << "name" << std::setw(20)
       << "classify" << std::setw(16) << "regularity" << "status\n";
    bool all_ok = true;
    for (const CorpusOutcome& o : outcomes) {
        os << std::left << std::setw(static_cast<int>(width) + 2) << o.name << std::setw(20)
           << o.lj << std::setw(16) << o.regularity << (o.ok ? "pass" : "FAIL " + o.detail)
           << "\n";
        all_ok = all_ok && o.ok;
    }
    os << (all_ok ? "corpus: all expectations met\n" : "corpus: FAILURES present\n");
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral portraits and resolvent growth certificates for banded Toeplitz "
                 "operators"};
    app.require_subcommand(1);

    std::string symbol_path, config_path, out_path, w_flag, grid_flag;
    int samples = 0, section_n = 400, workers = 0, grace_s = -1;
    double tol = 0.0, band = 1e-8, ray_angle = std::nan("");
    bool corpus_all = false;

    auto add_common = [&](CLI::App* sub, bool needs_symbol) {
        if (needs_symbol)
            sub->add_option("--symbol", symbol_path, "symbol JSON file")->required();
        sub->add_option("--config", config_path, "scan config JSON file");
        sub->add_option("--out", out_path, "write output to file instead of stdout");
        sub->add_option("--workers", workers, "parallel worker count");
    };

    CLI::App* classify = app.add_subcommand("classify", "Jordan-property classification");
    add_common(classify, true);
    classify->add_option("--samples", samples, "curve samples");
    classify->add_option("--tol", tol, "intersection candidate tolerance");

    CLI::App* divisor_cmd = app.add_subcommand("divisor", "zero divisor of P(z, w)");
    add_common(divisor_cmd, true);
    divisor_cmd->add_option("--w", w_flag, "query point RE,IM")->required();
    divisor_cmd->add_option("--band", band, "unimodular band");

    CLI::App* regularity = app.add_subcommand("regularity", "regularity ring scan");
    add_common(regularity, true);

    CLI::App* factor = app.add_subcommand("factor", "Wiener-Hopf factorization and bounds");
    add_common(factor, true);
    factor->add_option("--w", w_flag, "query point RE,IM")->required();

    CLI::App* lrg = app.add_subcommand("lrg", "linear resolvent growth constant");
    add_common(lrg, true);
    std::string lrg_csv;
    lrg->add_option("--csv", lrg_csv, "also write per-point CSV to this path");

    CLI::App* scan = app.add_subcommand("scan", "resolvent-set scan CSV");
    add_common(scan, true);

    CLI::App* portrait = app.add_subcommand("portrait", "resolvent norm raster CSV");
    add_common(portrait, true);
    portrait->add_option("--grid", grid_flag, "X0,X1,Y0,Y1,NX,NY")->required();
    portrait->add_option("--N", section_n, "section size");

    CLI::App* qrg_cmd = app.add_subcommand("qrg", "quadratic growth record (m = 1 symbols)");
    add_common(qrg_cmd, true);
    qrg_cmd->add_option("--w", w_flag, "query point RE,IM");
    qrg_cmd->add_option("--trace-ray", ray_angle, "trace a normal ray at this curve angle");

    CLI::App* grace = app.add_subcommand("grace", "apolarity regularity certificate (m = 1)");
    add_common(grace, true);
    grace->add_option("--s", grace_s, "certificate index, 0 <= s <= k-1")->required();

    CLI::App* corpus_cmd = app.add_subcommand("corpus", "rerun the reference corpus");
    add_common(corpus_cmd, false);
    corpus_cmd->add_flag("--all", corpus_all, "run every entry");

    CLI11_PARSE(app, argc, argv);

    try {
        if (workers > 0) {
            const std::string v = std::to_string(workers);
            setenv("TOEPLITZ_WORKERS", v.c_str(), 1);
        }
        ScanConfig cfg = config_or_default(config_path);
        OutStream out(out_path);

        if (classify->parsed()) {
            if (samples > 0) cfg.curve_samples = samples;
            if (tol > 0.0) cfg.intersection_tol = tol;
            const LJReport rep = classify_lj(load_symbol(symbol_path), cfg);
            emit_json(out.get(), to_json(rep));
            return rep.verdict == LJVerdict::Inconclusive ? 2 : 0;
        }
        if (divisor_cmd->parsed()) {
            const LaurentSymbol b = load_symbol(symbol_path);
            const cplx w = parse_complex_flag(w_flag);
            emit_json(out.get(), to_json(split_divisor(b, roots_of_p(b, w), band, w)));
            return 0;
        }
        if (regularity->parsed()) {
            const RegularityReport rep = regularity_scan(load_symbol(symbol_path), cfg);
            emit_json(out.get(), to_json(rep));
            return rep.verdict == RegularityVerdict::Inconclusive ? 2 : 0;
        }
        if (factor->parsed()) {
            const LaurentSymbol b = load_symbol(symbol_path);
            const cplx w = parse_complex_flag(w_flag);
            const FactorPair fp = factorize(b, w);
            json j{{"factors", to_json(fp)},
                   {"bounds", to_json(bound_report(b, w, regularity_scan(b, cfg)))}};
            emit_json(out.get(), j);
            return 0;
        }
        if (lrg->parsed()) {
            const LaurentSymbol b = load_symbol(symbol_path);
            const LrgResult res = lrg_constant(b, cfg);
            emit_json(out.get(), to_json(res));
            if (!lrg_csv.empty()) {
                std::ofstream cs(lrg_csv);
                if (!cs) throw ConfigError("cannot open output file: " + lrg_csv);
                CsvWriter csv(cs, {"w_re", "w_im", "dist", "krein", "neumann", "product"});
                for (const LrgPoint& p : res.points) {
                    csv.col(p.w.real()).col(p.w.imag()).col(p.dist).col(p.krein);
                    csv.col(p.neumann ? *p.neumann : std::nan("")).col(p.product);
                    csv.endrow();
                }
            }
            return res.stabilized ? 0 : 2;
        }
        if (scan->parsed()) return cmd_scan(load_symbol(symbol_path), cfg, out.get());
        if (portrait->parsed()) {
            GridBox g;
            if (std::sscanf(grid_flag.c_str(), "%lf,%lf,%lf,%lf,%d,%d", &g.x0, &g.x1, &g.y0,
                            &g.y1, &g.nx, &g.ny) != 6)
                throw ConfigError("--grid: expected X0,X1,Y0,Y1,NX,NY");
            return cmd_portrait(load_symbol(symbol_path), g, section_n, cfg.seed, out.get());
        }
        if (qrg_cmd->parsed()) {
            const WienerSymbol wb = load_wiener(symbol_path);
            if (!std::isnan(ray_angle)) return cmd_qrg_ray(wb, ray_angle, cfg, out.get());
            if (w_flag.empty()) throw ConfigError("qrg: need --w or --trace-ray");
            emit_json(out.get(), to_json(qrg_record(wb, parse_complex_flag(w_flag), cfg.fft_size)));
            return 0;
        }
        if (grace->parsed()) {
            const GraceResult g = apolar_grace_test(load_symbol(symbol_path), grace_s);
            emit_json(out.get(), json{{"applies", g.applies}, {"rho", g.rho}});
            return 0;
        }
        if (corpus_cmd->parsed()) {
            if (!corpus_all) throw ConfigError("corpus: pass --all to run every entry");
            return cmd_corpus(cfg, out.get());
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ToepError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
