#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dpalg/linalg.hpp"
#include "dpalg/report.hpp"

namespace dpalg::cli {

using json = nlohmann::ordered_json;

enum class Format { text, structured };

/// A validated job document. Objects keep their JSON definitions; they are built when the job runs.
struct JobSpec {
    FieldPtr field;
    std::optional<std::uint64_t> seed;
    json objects;  // array of {"name", "kind", ...}
    json tasks;    // array of {"task", ...}
    std::string output_path;
    Format format = Format::structured;
};

/// Strict parse of the job notation. ParseError (with line and column) or ValidationError.
JobSpec parse_job(const std::string& text);

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<int> truncation_f;
    std::optional<int> truncation_deg;
    bool strict_degree = false;
    /// run only tasks of this type
    std::optional<std::string> only;
};

enum class Status { pass, fail, error };
const char* to_string(Status s);

struct TaskResult {
    std::string task;
    std::string label;
    Status status = Status::pass;
    std::vector<RelationReport> reports;
    json data = json::object();  // dimensions, matrices, witnesses
    std::string error;
};

struct JobReport {
    std::string field;
    std::uint64_t seed = 0;
    std::vector<TaskResult> tasks;
    Status status() const;
};

/// Runs the tasks (concurrently; results in declared order). Object construction errors are ValidationError.
JobReport run_job(const JobSpec& job, const RunOptions& opt = {});

std::string render(const JobReport& r, Format f);
/// 0 all pass, 1 some fail, 2 some error.
int exit_code(const JobReport& r);

/// Matrix in report notation: rows, cols and row-major data of scalars.
json matrix_json(const Matrix& m);

}  // namespace dpalg::cli
