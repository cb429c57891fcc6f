#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toep/curve.hpp"
#include "toep/divisor.hpp"
#include "toep/scan_config.hpp"
#include "toep/symbol.hpp"

namespace toep {

/// Reference symbols with pinned expectations, used by the reproducibility
/// harness and the regression tests.
struct CorpusEntry {
    std::string name;
    LaurentSymbol symbol;
    std::optional<LJVerdict> expect_lj;
    std::optional<bool> expect_degenerate;
    std::optional<int> expect_cusp_count;
    std::optional<RegularityVerdict> expect_regularity;
    std::optional<cplx> expect_intersection_value;
};

const std::vector<CorpusEntry>& corpus();

struct CorpusOutcome {
    std::string name;
    bool ok = true;
    std::string lj;
    std::string regularity;
    std::string detail; // first failed expectation, empty when ok
};

std::vector<CorpusOutcome> run_corpus(const ScanConfig& cfg);

// Named corpus symbols, also handy in tests.
LaurentSymbol symbol_b0();                 // z + 1/z
LaurentSymbol symbol_b1(int n);            // n/z - z^n
LaurentSymbol symbol_b2();                 // 1/z + z^2
LaurentSymbol symbol_b3(int q);            // z^{q+1} + 4 z + z^{-q+1}
LaurentSymbol symbol_ellipse();            // 2 z + 1/z
LaurentSymbol symbol_grace();              // 1/z + 2 z^2
LaurentSymbol symbol_grace_selfint();      // 1/z + z^2/(zeta(zeta+1)), |zeta+1| < 1

} // namespace toep
