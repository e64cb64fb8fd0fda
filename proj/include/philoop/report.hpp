#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace philoop {

enum class Status { pass, fail, error };

std::string to_string(Status s);

/// Outcome of one named check. A failing check always carries a witness
/// (the offending inputs and both sides of the identity).
struct Check {
    std::string name;
    Status status = Status::pass;
    nlohmann::ordered_json witness;
    nlohmann::ordered_json info;
};

class Report {
public:
    void add(Check c) { checks_.push_back(std::move(c)); }
    void pass(std::string name, nlohmann::ordered_json info = {});
    void fail(std::string name, nlohmann::ordered_json witness, nlohmann::ordered_json info = {});
    void error(std::string name, const std::string &what);
    /// Appends every check of `other`, prefixing names with `prefix`.
    void merge(const Report &other, const std::string &prefix = "");

    const std::vector<Check> &checks() const noexcept { return checks_; }
    bool passed() const;
    const Check *find(const std::string &name) const;

    nlohmann::ordered_json to_json() const;

private:
    std::vector<Check> checks_;
};

} // namespace philoop
