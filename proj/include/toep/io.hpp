#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "toep/curve.hpp"
#include "toep/divisor.hpp"
#include "toep/factorization.hpp"
#include "toep/oracle.hpp"
#include "toep/qrg.hpp"
#include "toep/scan_config.hpp"
#include "toep/symbol.hpp"

namespace toep {

using json = nlohmann::json;

/// 17 significant digits: round-trips doubles bit-exactly through text.
std::string fmt17(double x);

json complex_to_json(cplx z);
cplx complex_from_json(const json& j, const std::string& key);

/// Symbol literal `{"coeffs": {"-1": [re, im], ...}}`; string keys are signed
/// integer indices. Violations raise ConfigError naming the offending key.
LaurentSymbol parse_symbol_json(const json& j);
WienerSymbol parse_wiener_json(const json& j);
LaurentSymbol load_symbol(const std::string& path);
WienerSymbol load_wiener(const std::string& path);
json symbol_to_json(const LaurentSymbol& b);

/// Missing keys fall back to defaults (warned on `warn` when non-null);
/// type violations and broken invariants raise ConfigError naming the key.
ScanConfig parse_config_json(const json& j, std::ostream* warn = nullptr);
ScanConfig load_config(const std::string& path); // warnings to stderr

json to_json(const CoefficientTest& t);
json to_json(const LJReport& r);
json to_json(const ZeroDivisor& d);
json to_json(const RegularityReport& r);
json to_json(const FactorPair& fp);
json to_json(const BoundReport& r);
json to_json(const LrgResult& r);
json to_json(const QRGRecord& r);
json to_json(const ResolventSample& s);

/// Fixed-column CSV with 17-significant-digit floats.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& header);
    CsvWriter& col(double v);
    CsvWriter& col(int v);
    CsvWriter& col(const std::string& v);
    void endrow();

private:
    std::ostream& os_;
    bool first_ = true;
    void sep();
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(std::istream& is);

} // namespace toep
