#include "exmeasure/report.hpp"

#include "json.hpp"

#include <stdexcept>

namespace exm {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* status_name(CheckEntry::Status s) {
    switch (s) {
        case CheckEntry::Status::pass: return "pass";
        case CheckEntry::Status::sampled_pass: return "sampled-pass";
        case CheckEntry::Status::fail: return "fail";
    }
    return "?";
}

CheckEntry::Status status_from_name(const std::string& s) {
    if (s == "pass") return CheckEntry::Status::pass;
    if (s == "sampled-pass") return CheckEntry::Status::sampled_pass;
    if (s == "fail") return CheckEntry::Status::fail;
    throw std::invalid_argument("report: unknown status '" + s + "'");
}

}  // namespace

bool Report::ok() const {
    for (const auto& e : entries)
        if (e.status == CheckEntry::Status::fail) return false;
    return true;
}

void Report::add_pass(std::string id, std::string detail) {
    entries.push_back({std::move(id), CheckEntry::Status::pass, std::move(detail), {}});
}

void Report::add_sampled(std::string id, std::string detail) {
    entries.push_back({std::move(id), CheckEntry::Status::sampled_pass, std::move(detail), {}});
}

void Report::add_fail(std::string id, std::string detail,
                      std::vector<std::pair<std::string, std::string>> counterexample) {
    entries.push_back({std::move(id), CheckEntry::Status::fail, std::move(detail), std::move(counterexample)});
}

void Report::merge(const Report& other) {
    for (const auto& e : other.entries) {
        CheckEntry copy = e;
        copy.id = other.suite + "." + copy.id;
        entries.push_back(std::move(copy));
    }
}

std::string Report::to_json_string() const {
    ordered_json j;
    j["suite"] = suite;
    j["entries"] = ordered_json::array();
    for (const auto& e : entries) {
        ordered_json je;
        je["id"] = e.id;
        je["status"] = status_name(e.status);
        if (!e.detail.empty()) je["detail"] = e.detail;
        if (!e.counterexample.empty()) {
            ordered_json cx;
            for (const auto& [k, v] : e.counterexample) cx[k] = v;
            je["counterexample"] = cx;
        }
        j["entries"].push_back(std::move(je));
    }
    return j.dump(2);
}

std::string Report::summary() const {
    int failed = 0;
    for (const auto& e : entries)
        if (e.status == CheckEntry::Status::fail) ++failed;
    return suite + ": " + std::to_string(entries.size()) + " checks, " + std::to_string(failed) + " failed";
}

Report report_from_json_string(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw std::invalid_argument(std::string("report: bad JSON: ") + ex.what());
    }
    if (!j.is_object() || !j.contains("suite") || !j.contains("entries") || !j["entries"].is_array())
        throw std::invalid_argument("report: not a report object");
    Report r;
    r.suite = j["suite"].get<std::string>();
    for (const auto& je : j["entries"]) {
        CheckEntry e;
        e.id = je.at("id").get<std::string>();
        e.status = status_from_name(je.at("status").get<std::string>());
        if (je.contains("detail")) e.detail = je["detail"].get<std::string>();
        if (je.contains("counterexample"))
            for (const auto& [k, v] : je["counterexample"].items())
                e.counterexample.emplace_back(k, v.get<std::string>());
        r.entries.push_back(std::move(e));
    }
    return r;
}

}  // namespace exm
