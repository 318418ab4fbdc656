#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace wolff::harness {

enum class Status { Pass, Fail, Indeterminate };

std::string to_string(Status s);

/// One check. `margin` is the signed distance of the worst observation to its
/// threshold, positive when the check passes (NaN when not applicable).
struct Record {
    std::string id;
    Status status = Status::Pass;
    double margin = 0.0;
    std::string inputs_digest;
    std::map<std::string, std::string> info;
};

struct Summary {
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t indeterminate = 0;
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<Record> records;
    double runtime_seconds = 0.0;  ///< not written to the report file

    Summary summary() const;
    void add(Record r) { records.push_back(std::move(r)); }
    /// Sorts records by id (stable for equal ids).
    void finalize();
};

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string digest(const std::string& text);

/// Line-delimited JSON: a header line, one line per record, a summary line.
/// The output is a pure function of the records.
std::string to_jsonl(const Report& r);
void write_report(const Report& r, const std::string& path);

/// Short human-readable summary, one line per failing check.
std::string human_summary(const Report& r);

/// 0 iff there are no failures.
int exit_code(const Report& r);

}  // namespace wolff::harness
