#include "philoop/report.hpp"

#include <algorithm>

namespace philoop {

std::string to_string(Status s)
{
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "fail";
    case Status::error:
        return "error";
    }
    return "error";
}

void Report::pass(std::string name, nlohmann::ordered_json info)
{
    add({std::move(name), Status::pass, nullptr, std::move(info)});
}

void Report::fail(std::string name, nlohmann::ordered_json witness, nlohmann::ordered_json info)
{
    add({std::move(name), Status::fail, std::move(witness), std::move(info)});
}

void Report::error(std::string name, const std::string &what)
{
    add({std::move(name), Status::error, {{"error", what}}, nullptr});
}

void Report::merge(const Report &other, const std::string &prefix)
{
    for (auto c : other.checks_) {
        c.name = prefix + c.name;
        checks_.push_back(std::move(c));
    }
}

bool Report::passed() const
{
    return std::all_of(checks_.begin(), checks_.end(), [](const Check &c) { return c.status == Status::pass; });
}

const Check *Report::find(const std::string &name) const
{
    auto it = std::find_if(checks_.begin(), checks_.end(), [&](const Check &c) { return c.name == name; });
    return it == checks_.end() ? nullptr : &*it;
}

nlohmann::ordered_json Report::to_json() const
{
    auto out = nlohmann::ordered_json::array();
    for (const auto &c : checks_) {
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["status"] = to_string(c.status);
        if (!c.witness.is_null())
            j["witness"] = c.witness;
        if (!c.info.is_null())
            j["info"] = c.info;
        out.push_back(std::move(j));
    }
    return out;
}

} // namespace philoop
