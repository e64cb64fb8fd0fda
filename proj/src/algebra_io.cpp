#include "philoop/algebra_io.hpp"

#include "philoop/errors.hpp"
#include "philoop/parse.hpp"

#include <fstream>

namespace philoop {

namespace {

using nlohmann::json;

Scalar read_scalar(const json &v, const std::string &where)
{
    if (v.is_number_integer())
        return Scalar(Rational(v.get<long>()));
    if (v.is_string())
        return parse_scalar(v.get<std::string>());
    throw ParseError(where + ": expected a rational (string or integer)", 0);
}

std::vector<std::string> read_basis(const json &j)
{
    if (!j.is_object() || !j.contains("basis") || !j["basis"].is_array())
        throw ParseError("algebra JSON needs a \"basis\" array", 0);
    std::vector<std::string> basis;
    for (const auto &b : j["basis"]) {
        if (!b.is_string() || b.get<std::string>().empty())
            throw ParseError("basis entries must be nonempty strings", 0);
        basis.push_back(b.get<std::string>());
    }
    if (basis.empty())
        throw ParseError("empty basis", 0);
    return basis;
}

std::size_t find_index(const std::vector<std::string> &basis, const std::string &name, const std::string &where)
{
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == name)
            return i;
    throw ParseError(where + ": unknown basis element '" + name + "'", 0);
}

Matrix read_form(const json &j, std::size_t n)
{
    Matrix form(n, Vector(n, Scalar(0)));
    if (!j.contains("form"))
        return form;
    const json &f = j["form"];
    if (!f.is_array() || f.size() != n)
        throw ParseError("\"form\" must be an n x n array", 0);
    for (std::size_t r = 0; r < n; ++r) {
        if (!f[r].is_array() || f[r].size() != n)
            throw ParseError("\"form\" must be an n x n array", 0);
        for (std::size_t c = 0; c < n; ++c)
            form[r][c] = read_scalar(f[r][c], "form");
    }
    return form;
}

Vector read_vector(const json &v, const std::vector<std::string> &basis, const std::string &where)
{
    if (!v.is_object())
        throw ParseError(where + ": expected an object of coefficients", 0);
    Vector out(basis.size(), Scalar(0));
    for (const auto &[name, c] : v.items())
        out[find_index(basis, name, where)] += read_scalar(c, where);
    return out;
}

// Splits "[a,b]" or "a*b" into its two names.
std::pair<std::string, std::string> split_key(const std::string &key, bool bracket)
{
    std::string body = key;
    if (bracket) {
        if (body.size() < 2 || body.front() != '[' || body.back() != ']')
            throw ParseError("bracket key must look like [a,b]: " + key, 0);
        body = body.substr(1, body.size() - 2);
    }
    auto sep = body.find(bracket ? ',' : '*');
    if (sep == std::string::npos)
        throw ParseError("malformed table key: " + key, 0);
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(' ');
        auto e = s.find_last_not_of(' ');
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    return {trim(body.substr(0, sep)), trim(body.substr(sep + 1))};
}

std::vector<std::vector<Vector>> zero_table(std::size_t n)
{
    return std::vector<std::vector<Vector>>(n, std::vector<Vector>(n, Vector(n, Scalar(0))));
}

} // namespace

LieData lie_from_json(const json &j)
{
    LieData g;
    g.basis = read_basis(j);
    const std::size_t n = g.basis.size();
    g.bracket = zero_table(n);
    std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
    if (j.contains("brackets")) {
        if (!j["brackets"].is_object())
            throw ParseError("\"brackets\" must be an object", 0);
        for (const auto &[key, value] : j["brackets"].items()) {
            auto [a, b] = split_key(key, true);
            std::size_t ia = find_index(g.basis, a, key), ib = find_index(g.basis, b, key);
            g.bracket[ia][ib] = read_vector(value, g.basis, key);
            given[ia][ib] = true;
        }
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (given[a][b] && !given[b][a])
                for (std::size_t k = 0; k < n; ++k)
                    g.bracket[b][a][k] = -g.bracket[a][b][k];
    g.form = read_form(j, n);
    g.validate();
    return g;
}

NovikovData novikov_from_json(const json &j)
{
    NovikovData A;
    A.basis = read_basis(j);
    const std::size_t n = A.basis.size();
    A.product = zero_table(n);
    if (j.contains("products")) {
        if (!j["products"].is_object())
            throw ParseError("\"products\" must be an object", 0);
        for (const auto &[key, value] : j["products"].items()) {
            auto [a, b] = split_key(key, false);
            A.product[find_index(A.basis, a, key)][find_index(A.basis, b, key)] = read_vector(value, A.basis, key);
        }
    }
    A.form = read_form(j, n);
    A.validate();
    return A;
}

NamedAlgebra algebra_from_json(const json &j, const std::string &name)
{
    std::string type = "lie";
    if (j.is_object() && j.contains("type")) {
        if (!j["type"].is_string())
            throw ParseError("\"type\" must be a string", 0);
        type = j["type"].get<std::string>();
    }
    if (type == "lie") {
        LieData g = lie_from_json(j);
        return {name, build_current(g), g, std::nullopt};
    }
    if (type == "novikov") {
        NovikovData A = novikov_from_json(j);
        return {name, build_novikov(A), std::nullopt, A};
    }
    throw ParseError("unknown algebra type '" + type + "'", 0);
}

NamedAlgebra load_algebra(const std::string &name_or_path)
{
    if (name_or_path == "sl2") {
        auto g = catalog::sl2();
        return {"sl2", build_current(g), g, std::nullopt};
    }
    if (name_or_path == "gl2") {
        auto g = catalog::gl2();
        return {"gl2", build_current(g), g, std::nullopt};
    }
    if (name_or_path == "heisenberg") {
        auto g = catalog::abelian(1, {{Scalar(1)}});
        return {"heisenberg", build_current(g), g, std::nullopt};
    }
    if (name_or_path == "virasoro")
        return {"virasoro", build_virasoro(), std::nullopt, std::nullopt};
    if (name_or_path == "novikov1") {
        auto A = catalog::novikov_line(Scalar(1), Scalar(1));
        return {"novikov1", build_novikov(A), std::nullopt, A};
    }
    std::ifstream in(name_or_path);
    if (!in)
        throw ParseError("unknown algebra '" + name_or_path + "' (not a built-in name or readable file)", 0);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    return algebra_from_json(j, name_or_path);
}

} // namespace philoop
