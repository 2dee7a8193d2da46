#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "graphcohom/cli.hpp"

using namespace gcoh;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "graphcohom");
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content)
{
    auto path = std::filesystem::temp_directory_path() / ("graphcohom_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

const std::string k3 = temp_file("k3.txt", "# triangle\nvertices 3\n0 1\n1 2\n0 2\n");
const std::string k4 = temp_file("k4.txt", "vertices 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
const std::string c4 = temp_file("c4.txt", "vertices 4\n0 1\n1 2\n2 3\n3 0\n");
const std::string looped = temp_file("loop.txt", "vertices 2\n0 1\n1 1\n");
const std::string broken = temp_file("broken.txt", "vertices 3\n0 1\n\n1 7\n");
const std::string s3 = temp_file("s3.alg", "pairing_degree 3\nbasis 1:0 y:3\nunit 1\npair 1 y = 1\n");
const std::string s2_f7 =
    temp_file("s2f7.alg", "field F7\npairing_degree 2\nbasis 1:0 x:2\nunit 1\npair 1 x = 1\n");

}  // namespace

TEST_CASE("betti command")
{
    auto r = cli({"betti", "--graph", k3, "--complex", "conn"});
    CHECK(r.code == 0);
    CHECK(r.out.find("degree 2: 2") != std::string::npos);
    CHECK(r.out.find("euler characteristic: 2") != std::string::npos);

    r = cli({"betti", "--graph", k3, "--complex", "cbs"});
    CHECK(r.code == 0);
    CHECK(r.out.find("chain dimensions: 0:8 1:12 2:6 3:2") != std::string::npos);

    r = cli({"betti", "--graph", k4, "--complex", "dual", "--format", "structured"});
    CHECK(r.code == 0);
    CHECK(r.out.find("betti.1\t2\n") != std::string::npos);
    CHECK(r.out.find("grading\ttotal-degree\n") != std::string::npos);
    // structured output is deterministic
    CHECK(cli({"betti", "--graph", k4, "--complex", "dual", "--format", "structured"}).out == r.out);

    r = cli({"betti", "--graph", k4, "--complex", "rn", "--algebra", "t2", "--field", "F101"});
    CHECK(r.code == 0);
    CHECK(r.out.find("over F101") != std::string::npos);
}

TEST_CASE("input errors exit with code 2")
{
    auto r = cli({"betti", "--graph", broken});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 4") != std::string::npos);
    r = cli({"betti", "--graph", looped});
    CHECK(r.code == 2);
    CHECK(r.err.find("simple") != std::string::npos);
    CHECK(cli({"betti", "--graph", "/nonexistent/graph.txt"}).code == 2);
    CHECK(cli({"betti", "--graph", k3, "--algebra", "nope"}).code == 2);
    CHECK(cli({"betti", "--graph", k3, "--complex", "other"}).code == 2);
    CHECK(cli({"betti", "--graph", k3, "--field", "F4"}).code == 2);
    CHECK(cli({"betti"}).code == 2);

    r = cli({"quasi-iso", "--graph", k3, "--algebra", s3});
    CHECK(r.code == 2);
    CHECK(r.err.find("even pairing degree") != std::string::npos);
    // the dual complex itself is fine in odd degree
    CHECK(cli({"betti", "--graph", k3, "--algebra", s3, "--complex", "dual"}).code == 0);
}

TEST_CASE("field selection")
{
    auto r = cli({"betti", "--graph", k3, "--algebra", s2_f7, "--complex", "dual"});
    CHECK(r.code == 0);
    CHECK(r.out.find("over F7") != std::string::npos);
    r = cli({"betti", "--graph", k3, "--algebra", s2_f7, "--field", "F5"});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);

    ::setenv("GRAPHCOHOM_FIELD", "F3", 1);
    CHECK(cli({"betti", "--graph", k3, "--complex", "dual"}).out.find("over F3") != std::string::npos);
    CHECK(cli({"betti", "--graph", k3, "--complex", "dual", "--field", "Q"}).out.find("over Q") != std::string::npos);
    CHECK(cli({"betti", "--graph", k3, "--algebra", s2_f7}).out.find("over F7") != std::string::npos);
    ::setenv("GRAPHCOHOM_FIELD", "bogus", 1);
    CHECK(cli({"betti", "--graph", k3}).code == 2);
    ::unsetenv("GRAPHCOHOM_FIELD");
}

TEST_CASE("quasi-iso command")
{
    auto r = cli({"quasi-iso", "--graph", k3});
    CHECK(r.code == 0);
    CHECK(r.out.find("quasi-isomorphic") != std::string::npos);
    r = cli({"quasi-iso", "--graph", k4, "--algebra", "t2", "--format", "structured"});
    CHECK(r.code == 0);
    CHECK(r.out.find("result\tmatch") != std::string::npos);
}

TEST_CASE("chromatic command")
{
    auto r = cli({"chromatic", "--graph", k3});
    CHECK(r.code == 0);
    CHECK(r.out.find("λ^3 - 3λ^2 + 2λ") != std::string::npos);
    CHECK(r.out.find("q^6 - q^2") != std::string::npos);
    r = cli({"chromatic", "--graph", looped, "--format", "structured"});
    CHECK(r.code == 0);
    CHECK(r.out.find("subset\t0\n") != std::string::npos);
    CHECK(r.out.find("identity\tskipped") != std::string::npos);
}

TEST_CASE("verify command")
{
    auto r = cli({"verify", "--graph", k3});
    CHECK(r.code == 0);
    for (const char* name : {"lemma-delta", "arnold-cycles-vanish", "del-contr-exact", "euler-chromatic", "quasi-iso"})
        CHECK(r.out.find(std::string("PASS  ") + name) != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);

    r = cli({"verify", "--graph", c4, "--generator-mode", "triangles-only"});
    CHECK(r.code == 0);
    CHECK(r.out.find("INFO  ideal-triangle-generation") != std::string::npos);

    r = cli({"verify", "--graph", looped, "--format", "structured"});
    CHECK(r.code == 0);
    CHECK(r.out.find("check.d-squared-cbs\tINFO") != std::string::npos);
}
