#include "toep/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "toep/errors.hpp"

namespace toep {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(key + ": expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

namespace {

std::map<int, cplx> parse_coeff_map(const json& j) {
    if (!j.is_object()) throw ConfigError("expected a JSON object at the top level");
    if (!j.contains("coeffs")) throw ConfigError("coeffs: key missing");
    const json& c = j.at("coeffs");
    if (!c.is_object()) throw ConfigError("coeffs: expected an object of index -> [re, im]");
    std::map<int, cplx> out;
    for (const auto& [key, val] : c.items()) {
        size_t pos = 0;
        int idx = 0;
        try {
            idx = std::stoi(key, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != key.size())
            throw ConfigError("coeffs." + key + ": key is not a signed integer index");
        out[idx] = complex_from_json(val, "coeffs." + key);
    }
    if (out.empty()) throw ConfigError("coeffs: empty coefficient map");
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open file: " + path);
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return j;
}

} // namespace

LaurentSymbol parse_symbol_json(const json& j) {
    try {
        return LaurentSymbol::from_coeff_map(parse_coeff_map(j));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("coeffs: ") + e.what());
    }
}

WienerSymbol parse_wiener_json(const json& j) {
    const std::map<int, cplx> c = parse_coeff_map(j);
    if (c.begin()->first < -1)
        throw ConfigError("coeffs." + std::to_string(c.begin()->first) +
                          ": indices below -1 are not representable (m must be 1)");
    const auto it = c.find(-1);
    if (it == c.end() || it->second == cplx{0.0, 0.0})
        throw ConfigError("coeffs.-1: required and must be nonzero");
    const int top = c.rbegin()->first;
    std::vector<cplx> tail(static_cast<size_t>(std::max(top + 1, 0)), cplx{0.0, 0.0});
    for (const auto& [idx, v] : c)
        if (idx >= 0) tail[static_cast<size_t>(idx)] = v;
    return WienerSymbol(it->second, std::move(tail));
}

LaurentSymbol load_symbol(const std::string& path) { return parse_symbol_json(read_json_file(path)); }

WienerSymbol load_wiener(const std::string& path) { return parse_wiener_json(read_json_file(path)); }

json symbol_to_json(const LaurentSymbol& b) {
    json coeffs = json::object();
    for (int j = -b.m(); j <= b.k(); ++j)
        if (b.coeff(j) != cplx{0.0, 0.0} || j == 0)
            coeffs[std::to_string(j)] = complex_to_json(b.coeff(j));
    return json{{"coeffs", coeffs}};
}

namespace {

template <typename T>
void take(const json& j, const char* key, T& slot, std::ostream* warn) {
    if (!j.contains(key)) {
        if (warn) (*warn) << "config: key '" << key << "' missing, using default\n";
        return;
    }
    try {
        slot = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string(key) + ": wrong type");
    }
}

} // namespace

void ScanConfig::validate() const {
    if (curve_samples < 64) throw ConfigError("curve_samples: must be >= 64");
    if (intersection_tol < 0.0) throw ConfigError("intersection_tol: must be >= 0");
    if (max_level < 1 || max_level > 64) throw ConfigError("max_level: must lie in [1, 64]");
    if (!(margin > 0.0)) throw ConfigError("margin: must be positive");
    if (!(band > 0.0 && band < 0.1)) throw ConfigError("band: must lie in (0, 0.1)");
    if (fft_size < 1024 || (fft_size & (fft_size - 1)) != 0)
        throw ConfigError("fft_size: must be a power of two >= 1024");
    if (section_schedule.size() < 3) throw ConfigError("section_schedule: needs >= 3 entries");
    for (size_t i = 0; i < section_schedule.size(); ++i) {
        if (section_schedule[i] < 2) throw ConfigError("section_schedule: sizes must be >= 2");
        if (i > 0 && section_schedule[i] <= section_schedule[i - 1])
            throw ConfigError("section_schedule: must be strictly increasing");
    }
    if (ring_points < 16) throw ConfigError("ring_points: must be >= 16");
    if (grid) {
        if (!(grid->x0 < grid->x1) || !(grid->y0 < grid->y1))
            throw ConfigError("grid: box must have positive extent");
        if (grid->nx < 2 || grid->ny < 2) throw ConfigError("grid: nx, ny must be >= 2");
    }
}

ScanConfig parse_config_json(const json& j, std::ostream* warn) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    ScanConfig cfg;
    take(j, "curve_samples", cfg.curve_samples, warn);
    take(j, "intersection_tol", cfg.intersection_tol, warn);
    take(j, "max_level", cfg.max_level, warn);
    take(j, "margin", cfg.margin, warn);
    take(j, "band", cfg.band, warn);
    take(j, "fft_size", cfg.fft_size, warn);
    take(j, "section_schedule", cfg.section_schedule, warn);
    take(j, "ring_points", cfg.ring_points, warn);
    take(j, "seed", cfg.seed, warn);
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        GridBox box;
        for (const char* key : {"x0", "x1", "y0", "y1", "nx", "ny"})
            if (!g.contains(key)) throw ConfigError(std::string("grid.") + key + ": key missing");
        try {
            box.x0 = g.at("x0").get<double>();
            box.x1 = g.at("x1").get<double>();
            box.y0 = g.at("y0").get<double>();
            box.y1 = g.at("y1").get<double>();
            box.nx = g.at("nx").get<int>();
            box.ny = g.at("ny").get<int>();
        } catch (const json::exception&) {
            throw ConfigError("grid: wrong field type");
        }
        cfg.grid = box;
    }
    for (const auto& [key, val] : j.items()) {
        static const char* known[] = {"curve_samples", "intersection_tol", "max_level",
                                      "margin",        "band",             "fft_size",
                                      "section_schedule", "ring_points",   "seed",
                                      "grid"};
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok && warn) (*warn) << "config: unknown key '" << key << "' ignored\n";
    }
    cfg.validate();
    return cfg;
}

ScanConfig load_config(const std::string& path) {
    return parse_config_json(read_json_file(path), &std::cerr);
}

json to_json(const CoefficientTest& t) {
    return json{{"passes_weak", t.passes_weak},
                {"passes_strict", t.passes_strict},
                {"which_sign", t.which_sign}};
}

json to_json(const LJReport& r) {
    json pairs = json::array();
    for (const IntersectionPair& p : r.self_intersections)
        pairs.push_back(json{{"theta1", p.theta1},
                             {"theta2", p.theta2},
                             {"w", complex_to_json(p.w)},
                             {"residual", p.residual}});
    json cusps = json::array();
    for (const cplx& c : r.cusps) cusps.push_back(complex_to_json(c));
    json j{{"verdict", to_string(r.verdict)},
           {"degenerate_segment", r.degenerate_segment},
           {"self_intersections", pairs},
           {"cusps", cusps},
           {"samples_used", r.samples_used},
           {"min_separated_distance", r.min_separated_distance},
           {"lipschitz_gap", r.lipschitz_gap},
           {"injectivity_radius", r.injectivity_radius}};
    j["coefficient_test"] = r.coefficient_test ? to_json(*r.coefficient_test) : json(nullptr);
    return j;
}

json to_json(const ZeroDivisor& d) {
    json roots = json::array();
    for (const cplx& z : d.roots) roots.push_back(complex_to_json(z));
    return json{{"w", complex_to_json(d.w)}, {"band", d.band},
                {"roots", roots},           {"interior", d.interior},
                {"unimodular", d.unimodular}, {"exterior", d.exterior}};
}

json to_json(const RegularityReport& r) {
    json levels = json::array();
    for (const RegularityLevel& s : r.grid_stats)
        levels.push_back(json{{"level", s.level},
                              {"offset", s.offset},
                              {"samples", s.samples},
                              {"sup_interior", s.sup_interior},
                              {"inf_exterior", std::isfinite(s.inf_exterior)
                                                   ? json(s.inf_exterior)
                                                   : json(nullptr)}});
    return json{{"verdict", to_string(r.verdict)},
                {"regular_interior", r.regular_interior},
                {"regular_exterior", r.regular_exterior},
                {"sup_interior_modulus", r.sup_interior_modulus},
                {"inf_exterior_modulus",
                 std::isfinite(r.inf_exterior_modulus) ? json(r.inf_exterior_modulus)
                                                       : json(nullptr)},
                {"r_estimate", r.r_estimate},
                {"R_estimate",
                 std::isfinite(r.R_estimate) ? json(r.R_estimate) : json(nullptr)},
                {"sup_interior_argmax_w", complex_to_json(r.sup_interior_argmax_w)},
                {"inf_exterior_argmin_w", complex_to_json(r.inf_exterior_argmin_w)},
                {"grid_stats", levels}};
}

json to_json(const FactorPair& fp) {
    json in = json::array(), ex = json::array();
    for (const cplx& z : fp.interior_roots) in.push_back(complex_to_json(z));
    for (const cplx& z : fp.exterior_roots) ex.push_back(complex_to_json(z));
    return json{{"w", complex_to_json(fp.w)},
                {"scale", complex_to_json(fp.scale)},
                {"interior_roots", in},
                {"exterior_roots", ex}};
}

namespace {
json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
} // namespace

json to_json(const BoundReport& r) {
    return json{{"dist", r.dist},
                {"krein", r.krein},
                {"generic_plus", opt_json(r.generic_plus)},
                {"generic_minus", opt_json(r.generic_minus)},
                {"refined_minus", opt_json(r.refined_minus)},
                {"refined_plus", opt_json(r.refined_plus)},
                {"neumann", opt_json(r.neumann)},
                {"constants", json{{"C1", r.constants.C1},
                                   {"C2", r.constants.C2},
                                   {"C3", opt_json(r.constants.C3)},
                                   {"C4", opt_json(r.constants.C4)},
                                   {"C5", opt_json(r.constants.C5)},
                                   {"C6", opt_json(r.constants.C6)}}}};
}

json to_json(const LrgResult& r) {
    json trace = json::array();
    for (const LrgLevel& l : r.trace)
        trace.push_back(json{{"level", l.level},
                             {"offset", l.offset},
                             {"samples", l.samples},
                             {"sup_product", l.sup_product},
                             {"argmax_w", complex_to_json(l.argmax_w)}});
    return json{{"c_lrg", opt_json(r.c_lrg)},
                {"sup_product", r.sup_product},
                {"argmax_w", complex_to_json(r.argmax_w)},
                {"stabilized", r.stabilized},
                {"regularity", to_string(r.regularity)},
                {"trace", trace}};
}

json to_json(const QRGRecord& r) {
    json window = json::array();
    for (int j = r.a_coeffs.j_min; j <= r.a_coeffs.j_max; ++j)
        window.push_back(complex_to_json(r.a_coeffs.at(j)));
    return json{{"w", complex_to_json(r.w)},
                {"dist", r.dist},
                {"zeta0", complex_to_json(r.zeta0)},
                {"a1_residue", complex_to_json(r.a1_residue)},
                {"a1_fft", complex_to_json(r.a1_fft)},
                {"phi_norm", r.phi_norm},
                {"denom", complex_to_json(r.denom)},
                {"b_inv_norm_bound", r.b_inv_norm_bound},
                {"qrg_bound", r.qrg_bound},
                {"binv_analytic", r.binv_analytic},
                {"beta", r.beta},
                {"n_fft", r.n_fft_used},
                {"a_coeffs", json{{"j_min", r.a_coeffs.j_min},
                                  {"j_max", r.a_coeffs.j_max},
                                  {"alias_bound", r.a_coeffs.alias_bound},
                                  {"values", window}}}};
}

json to_json(const ResolventSample& s) {
    json est = json::array();
    for (const auto& [n, v] : s.norm_estimates) est.push_back(json{{"N", n}, {"value", v}});
    return json{{"w", complex_to_json(s.w)},
                {"dist", s.dist},
                {"norm_estimates", est},
                {"extrapolated", s.extrapolated},
                {"krein", s.krein ? json(*s.krein) : json(nullptr)},
                {"lrg_ratio", s.lrg_ratio},
                {"qrg_ratio", s.qrg_ratio}};
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os) {
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) os_ << ',';
        os_ << header[i];
    }
    os_ << '\n';
}

void CsvWriter::sep() {
    if (!first_) os_ << ',';
    first_ = false;
}

CsvWriter& CsvWriter::col(double v) {
    sep();
    os_ << fmt17(v);
    return *this;
}

CsvWriter& CsvWriter::col(int v) {
    sep();
    os_ << v;
    return *this;
}

CsvWriter& CsvWriter::col(const std::string& v) {
    sep();
    os_ << v;
    return *this;
}

void CsvWriter::endrow() {
    os_ << '\n';
    first_ = true;
}

CsvTable parse_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            t.header = std::move(cells);
            first = false;
        } else {
            t.rows.push_back(std::move(cells));
        }
    }
    return t;
}

} // namespace toep
