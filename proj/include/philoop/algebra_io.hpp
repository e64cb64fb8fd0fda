#pragma once

#include "philoop/conformal.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace philoop {

/// A conformal algebra together with the finite-dimensional data it was
/// built from, when there is any.
struct NamedAlgebra {
    std::string name;
    ConformalAlgebra algebra;
    std::optional<LieData> lie;
    std::optional<NovikovData> novikov;
};

/// Reads
///   { "type": "lie", "basis": [...], "brackets": {"[a,b]": {"c": "1"}}, "form": [[...]] }
/// or, with "type": "novikov", a "products": {"a*b": {...}} table.
/// Missing brackets [b,a] are filled in by antisymmetry; rationals may be
/// strings or integers. Throws ParseError on malformed input and
/// ValidationError when the data violates the algebra identities.
NamedAlgebra algebra_from_json(const nlohmann::json &j, const std::string &name = "custom");

LieData lie_from_json(const nlohmann::json &j);
NovikovData novikov_from_json(const nlohmann::json &j);

/// One of the built-in names (sl2, gl2, heisenberg, virasoro, novikov1), or
/// a path to a JSON file.
NamedAlgebra load_algebra(const std::string &name_or_path);

} // namespace philoop
