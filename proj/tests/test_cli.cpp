#include <gtest/gtest.h>

#include "dpalg/cli.hpp"
#include "dpalg/error.hpp"

using namespace dpalg;
using namespace dpalg::cli;

namespace {

ErrorKind kind_of(const std::string& text) {
    try {
        run_job(parse_job(text));
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::TaskError;
}

}  // namespace

TEST(Cli, MinimalAndEmpty) {
    const auto job = parse_job(R"({"field": {"p": 2}})");
    EXPECT_EQ(job.field->p(), 2);
    const auto rep = run_job(job);
    EXPECT_TRUE(rep.tasks.empty());
    EXPECT_EQ(rep.status(), Status::pass);
    EXPECT_EQ(exit_code(rep), 0);
}

TEST(Cli, ParseErrorsCarryPosition) {
    try {
        parse_job("{\"field\": {\"p\": 2},\n  \"tasks\": [}");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ParseError);
        EXPECT_NE(std::string(e.what()).find("line 2, column 13"), std::string::npos) << e.what();
    }
    try {
        parse_job("{\"field\": {\"p\": 2},\n \"extra\": 0}");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ParseError);
        EXPECT_NE(std::string(e.what()).find("line 2, column 2"), std::string::npos) << e.what();
    }
}

TEST(Cli, ValidationErrors) {
    EXPECT_EQ(kind_of(R"({"field": {"p": 6}})"), ErrorKind::ValidationError);
    EXPECT_EQ(kind_of(R"({"field": {"p": 2}, "objects": [
        {"name": "a", "kind": "rlie", "preset": "heisenberg"},
        {"name": "a", "kind": "rlie", "preset": "sl2"}]})"),
              ErrorKind::ValidationError);
    EXPECT_EQ(kind_of(R"({"field": {"p": 2}, "objects": [
        {"name": "m", "kind": "beck_lie", "over": "nowhere", "preset": "trivial"}]})"),
              ErrorKind::ValidationError);
    EXPECT_EQ(kind_of(R"({"field": {"p": 2}, "objects": [{"name": "h", "kind": "rlie", "preset": "heisenberg"}],
        "tasks": [{"task": "check", "object": "h"}]})"),
              ErrorKind::ValidationError);  // no seed
    EXPECT_EQ(kind_of(R"({"field": {"p": 2}, "objects": [
        {"name": "x", "kind": "lie", "dim": 1, "bracket": [[0, 0, [1]]]}]})"),
              ErrorKind::ValidationError);
}

TEST(Cli, Sl2CheckPasses) {
    const std::string text = R"({"field": {"p": 3}, "seed": 4,
        "objects": [{"name": "sl2", "kind": "rlie", "preset": "sl2"}],
        "tasks": [{"task": "check", "object": "sl2"}]})";
    const auto rep = run_job(parse_job(text));
    ASSERT_EQ(rep.tasks.size(), 1u);
    EXPECT_EQ(rep.tasks[0].status, Status::pass);
    bool jacobi = false;
    for (const auto& r : rep.tasks[0].reports) jacobi = jacobi || r.name.find("acobi") != std::string::npos;
    EXPECT_TRUE(jacobi);
    EXPECT_EQ(render(rep, Format::structured), render(run_job(parse_job(text)), Format::structured));
}

TEST(Cli, CounterexampleWitness) {
    const auto rep = run_job(parse_job(R"({"field": {"p": 2},
        "tasks": [{"task": "compare", "kind": "pd_counterexample", "degree": 4}]})"));
    EXPECT_EQ(rep.status(), Status::pass);
    EXPECT_EQ(rep.tasks[0].data["witness"], "x*x^(2) = x^(3)");
}

TEST(Cli, FailingCheckGivesExitOne) {
    // x^2 = x, but x^p = p! pi(x) = 0
    const auto rep = run_job(parse_job(R"({"field": {"p": 2}, "seed": 1,
        "objects": [{"name": "m", "kind": "pdcom", "dim": 1, "mult": [[0, 0, [1]]], "pi": [[0]]}],
        "tasks": [{"task": "check", "object": "m"}]})"));
    EXPECT_EQ(rep.status(), Status::fail);
    EXPECT_EQ(exit_code(rep), 1);
}

TEST(Cli, TaskErrorsAreReported) {
    RunOptions opt;
    opt.strict_degree = true;
    opt.truncation_deg = 1;
    const auto rep = run_job(parse_job(R"({"field": {"p": 2},
        "tasks": [{"task": "beta", "operad": "com", "generators": 1, "x": [1], "r": [2], "args": [0]}]})"),
                             opt);
    EXPECT_EQ(rep.tasks[0].status, Status::error);
    EXPECT_NE(rep.tasks[0].error.find("DegreeOverflow"), std::string::npos);
    EXPECT_EQ(exit_code(rep), 2);
}

TEST(Cli, ScalarsOverF4) {
    // d(e^[2]) = e de + f(de) with trivial action: f = omega Frob forces omega c^2 = 0
    auto job = [](const std::string& f) {
        return R"({"field": {"p": 2, "k": 2},
        "objects": [{"name": "a", "kind": "rlie", "preset": "abelian", "dim": 1},
                    {"name": "t", "kind": "beck_lie", "over": "a", "preset": "trivial", "f": )" +
               f + R"(}],
        "tasks": [{"task": "derive", "module": "t", "export": true}]})";
    };
    const auto a = run_job(parse_job(job("[0, 1]")));
    EXPECT_EQ(a.status(), Status::pass);
    EXPECT_EQ(a.tasks[0].data["dim_fp"], 0);
    const auto b = run_job(parse_job(job("0")));
    EXPECT_EQ(b.tasks[0].data["dim_fp"], 2);
    EXPECT_EQ(b.tasks[0].data["basis"].size(), 2u);
}
