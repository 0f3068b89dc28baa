#pragma once

#include <string>

#include <json.hpp>

#include "adjforge/expr.hpp"
#include "adjforge/space.hpp"

namespace adjforge {

enum class Format { Text, Latex, Json };

/// Parses "text", "latex" or "json"; throws ArgumentError otherwise.
Format parse_format(const std::string &name);

std::string render(const Poly &p, Format f = Format::Text);
std::string render(const Coefficient &c, Format f = Format::Text);
std::string render(const Exponent &e, Format f = Format::Text);
std::string render(const Atom &a, const Space &s, Format f = Format::Text);
/// Expanded sum of terms. For Format::Json this is the serialized term dump.
std::string render(const Expr &e, const Space &s, Format f = Format::Text);
/// Pulls a common sign, eps power, monomial and denominator out of the sum.
std::string render_factored(const Expr &e, const Space &s, Format f = Format::Text);

/// Term list with fields coeff_num, coeff_den, eps_power and atoms.
nlohmann::json term_dump(const Expr &e, const Space &s);

} // namespace adjforge
