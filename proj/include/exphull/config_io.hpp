#pragma once

#include <string>
#include <vector>

#include "exphull/case2.hpp"
#include "exphull/gamma.hpp"
#include "exphull/mordell.hpp"
#include "exphull/variety.hpp"

namespace exphull {

/// Parses a polynomial expression over the given variables: rational
/// literals, variable names, + - * ^ and parentheses; exponents are integers
/// (negative allowed). Throws ParseError with the offending line number.
LaurentPoly parse_poly(const std::vector<std::string>& vars, const std::string& text,
                       int line = 0);

/// Sectioned text formats. Lines starting with '#' are comments.
GammaConfig parse_gamma_config(const std::string& text);
AVariety parse_variety(const std::string& text);
Ideal parse_torus_ideal(const std::string& text); ///< [torus] vars = n; [ideal]
FiniteRankGroup parse_group(const std::string& text);
FunctionalEquation parse_equation(const std::string& text);

/// Subspace DSL over a configuration: "full", "kernel", "base", or
/// "span(<combo>, ...)" with optional "+kernel" / "+base" suffixes, where a
/// combo is a rational linear combination of pair names.
SubspaceSpec parse_subspace(const GammaConfig& cfg, const std::string& text);

/// Point rows for dagger membership: combos separated by ';'.
QMatrix parse_point(const GammaConfig& cfg, const std::string& text);

std::string read_file(const std::string& path);

} // namespace exphull
