#include "wolffkit/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wolffkit/errors.hpp"

namespace wolff::harness {

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Indeterminate: return "indeterminate";
    }
    return "?";
}

Summary Report::summary() const {
    Summary s;
    for (const auto& r : records) {
        switch (r.status) {
            case Status::Pass: ++s.pass; break;
            case Status::Fail: ++s.fail; break;
            case Status::Indeterminate: ++s.indeterminate; break;
        }
    }
    return s;
}

void Report::finalize() {
    std::stable_sort(records.begin(), records.end(), [](const Record& a, const Record& b) { return a.id < b.id; });
}

std::string digest(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string to_jsonl(const Report& r) {
    using nlohmann::ordered_json;
    std::ostringstream os;
    ordered_json head;
    head["suite"] = r.suite;
    head["seed"] = r.seed;
    head["seed_derivation"] = "splitmix64(root + counter * 0x9e3779b97f4a7c15)";
    os << head.dump() << '\n';
    for (const auto& rec : r.records) {
        ordered_json j;
        j["id"] = rec.id;
        j["status"] = to_string(rec.status);
        // JSON has no NaN; a null margin means "not applicable".
        if (std::isfinite(rec.margin)) j["margin"] = rec.margin;
        else j["margin"] = nullptr;
        j["inputs_digest"] = rec.inputs_digest;
        ordered_json info = ordered_json::object();
        for (const auto& [k, v] : rec.info) info[k] = v;
        j["info"] = info;
        os << j.dump() << '\n';
    }
    const Summary s = r.summary();
    ordered_json tail;
    tail["summary"] = {{"pass", s.pass}, {"fail", s.fail}, {"indeterminate", s.indeterminate}};
    os << tail.dump() << '\n';
    return os.str();
}

void write_report(const Report& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write report to '" + path + "'");
    out << to_jsonl(r);
    if (!out) throw Error("failed writing report to '" + path + "'");
}

std::string human_summary(const Report& r) {
    const Summary s = r.summary();
    std::ostringstream os;
    os << r.suite << ": " << s.pass << " pass, " << s.fail << " fail, " << s.indeterminate << " indeterminate";
    os.precision(3);
    os << " (" << std::fixed << r.runtime_seconds << " s)\n";
    for (const auto& rec : r.records) {
        if (rec.status == Status::Pass) continue;
        os << "  " << to_string(rec.status) << ": " << rec.id;
        os.unsetf(std::ios::floatfield);
        os.precision(6);
        os << " margin=" << rec.margin;
        if (auto it = rec.info.find("error"); it != rec.info.end()) os << " error=" << it->second;
        os << '\n';
    }
    return os.str();
}

int exit_code(const Report& r) { return r.summary().fail == 0 ? 0 : 1; }

}  // namespace wolff::harness
