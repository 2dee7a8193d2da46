#include "graphcohom/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "graphcohom/chromatic.hpp"
#include "graphcohom/complexes.hpp"
#include "graphcohom/homology.hpp"
#include "graphcohom/verify.hpp"

namespace gcoh {

namespace {

struct RunConfig {
    std::string graph_path;
    std::string algebra = "s2";
    std::string field;
    std::string complex = "cbs";
    std::string format = "text";
    std::string generator_mode = "all-cycles";
};

/// Input problems (bad files, bad flags, unmet preconditions) map to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// text: free-form lines; structured: key<TAB>value records.
class Report {
public:
    Report(std::ostream& out, bool structured) : out_(out), structured_(structured) {}
    bool structured() const { return structured_; }
    void kv(const std::string& key, const std::string& value)
    {
        if (structured_)
            out_ << key << '\t' << value << '\n';
    }
    void text(const std::string& line)
    {
        if (!structured_)
            out_ << line << '\n';
    }

private:
    std::ostream& out_;
    bool structured_;
};

Graph load_graph(const RunConfig& cfg)
{
    try {
        return Graph::parse_file(cfg.graph_path);
    } catch (const ParseError& e) {
        throw InputError(cfg.graph_path + ": " + e.what());
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
}

std::optional<Field> requested_field(const RunConfig& cfg)
{
    try {
        if (!cfg.field.empty())
            return Field::parse(cfg.field);
    } catch (const std::exception& e) {
        throw InputError(std::string("--field: ") + e.what());
    }
    return std::nullopt;
}

Field env_field()
{
    const char* env = std::getenv("GRAPHCOHOM_FIELD");
    if (env == nullptr || *env == '\0')
        return Field::rationals();
    try {
        return Field::parse(env);
    } catch (const std::exception& e) {
        throw InputError(std::string("GRAPHCOHOM_FIELD: ") + e.what());
    }
}

bool declares_field(const std::string& path)
{
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line.substr(0, line.find('#')));
        std::string kw;
        if (ls >> kw && kw == "field")
            return true;
    }
    return false;
}

FrobeniusAlgebra load_algebra(const RunConfig& cfg)
{
    const std::optional<Field> flag = requested_field(cfg);
    try {
        if (auto b = FrobeniusAlgebra::builtin(cfg.algebra, flag.value_or(env_field())))
            return *b;
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
    if (!std::filesystem::exists(cfg.algebra)) {
        std::string names;
        for (const auto& n : FrobeniusAlgebra::builtin_names())
            names += (names.empty() ? "" : ", ") + n;
        throw InputError("--algebra: '" + cfg.algebra + "' is neither a file nor a built-in (" + names + ")");
    }
    try {
        // --field must agree with a field declared in the file; the file beats the environment.
        std::optional<Field> want = flag;
        if (!want && !declares_field(cfg.algebra))
            want = env_field();
        return FrobeniusAlgebra::parse_file(cfg.algebra, want);
    } catch (const ParseError& e) {
        throw InputError(cfg.algebra + ": " + e.what());
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(cfg.algebra + ": " + e.what());
    }
}

std::string join_dims(const ChainComplex& c)
{
    std::string s;
    for (int d : c.degrees())
        s += (s.empty() ? "" : " ") + std::to_string(d) + ":" + std::to_string(c.dimension(d));
    return s;
}

ChainComplex build_named(const std::string& which, const Graph& g, const FrobeniusAlgebra& A)
{
    try {
        if (which == "cbs")
            return build_cbs(g, A);
        if (which == "dual")
            return build_cbs_dual(g, A);
        if (which == "rn")
            return build_rn(g, A);
        if (which == "conn")
            return build_conn(g, A.field());
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    throw InputError("--complex must be one of cbs, dual, rn, conn");
}

int cmd_betti(const RunConfig& cfg, Report& r)
{
    const Graph g = load_graph(cfg);
    const FrobeniusAlgebra A = load_algebra(cfg);
    const ChainComplex c = build_named(cfg.complex, g, A);
    const BettiTable b = betti(c);
    const std::string field = A.field().name();
    r.kv("command", "betti");
    r.kv("complex", cfg.complex);
    r.kv("grading", to_string(c.grading()));
    r.kv("field", field);
    r.text("complex " + cfg.complex + " over " + field + ", " + to_string(c.grading()) + " grading");
    r.text("chain dimensions: " + (c.degrees().empty() ? std::string("(empty)") : join_dims(c)));
    r.text("betti numbers:");
    for (int d : c.degrees()) {
        r.kv("dim." + std::to_string(d), std::to_string(c.dimension(d)));
        r.kv("betti." + std::to_string(d), std::to_string(b.at(d)));
        r.text("degree " + std::to_string(d) + ": " + std::to_string(b.at(d)));
    }
    r.kv("euler", std::to_string(euler_characteristic(c)));
    r.text("euler characteristic: " + std::to_string(euler_characteristic(c)));
    return 0;
}

int cmd_quasi_iso(const RunConfig& cfg, Report& r)
{
    const Graph g = load_graph(cfg);
    const FrobeniusAlgebra A = load_algebra(cfg);
    ChainComplex dual = build_named("dual", g, A);
    std::optional<ChainComplex> rn;
    try {
        rn.emplace(build_rn(g, A, dual));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    const QuasiIsoReport q = quasi_iso_check(dual, *rn);
    r.kv("command", "quasi-iso");
    r.kv("field", A.field().name());
    r.text("dual complex vs R_n over " + A.field().name() + " (total degree)");
    r.text("degree  dim(dual)  dim(R_n)  betti(dual)  betti(R_n)");
    for (const auto& row : q.rows) {
        const std::string d = std::to_string(row.degree);
        r.kv("degree." + d, std::to_string(row.dim_a) + " " + std::to_string(row.dim_b) + " "
                                + std::to_string(row.betti_a) + " " + std::to_string(row.betti_b) + " "
                                + (row.match ? "match" : "mismatch"));
        std::ostringstream line;
        line << std::setw(6) << row.degree << std::setw(11) << row.dim_a << std::setw(10) << row.dim_b
             << std::setw(13) << row.betti_a << std::setw(12) << row.betti_b << (row.match ? "" : "  MISMATCH");
        r.text(line.str());
    }
    r.kv("result", q.all_match ? "match" : "mismatch");
    r.text(q.all_match ? "quasi-isomorphic: Betti tables agree" : "Betti tables differ");
    return q.all_match ? 0 : 1;
}

int cmd_chromatic(const RunConfig& cfg, Report& r)
{
    const Graph g = load_graph(cfg);
    const IntPolynomial sub = chromatic_subset(g);
    const IntPolynomial dc = chromatic_delcon(g);
    const bool routes = sub == dc;
    r.kv("command", "chromatic");
    r.kv("subset", sub.to_string("λ"));
    r.kv("delcon", dc.to_string("λ"));
    r.kv("routes", routes ? "agree" : "differ");
    r.text("subset expansion:      " + sub.to_string("λ"));
    r.text("deletion-contraction:  " + dc.to_string("λ"));
    bool identity = true;
    if (g.is_simple()) {
        const FrobeniusAlgebra A = load_algebra(cfg);
        const IntPolynomial lhs = graded_euler(build_cbs(g, A));
        const IntPolynomial rhs = dc.compose(quantum_dimension(A));
        identity = lhs == rhs;
        r.kv("graded_euler", lhs.to_string("q"));
        r.kv("chromatic_at_qdim", rhs.to_string("q"));
        r.kv("identity", identity ? "OK" : "FAIL");
        r.text("graded Euler of C_BS(" + A.name() + "): " + lhs.to_string("q"));
        r.text("P(Γ, qdim " + A.name() + "): " + rhs.to_string("q"));
        r.text(std::string("identity ") + (identity ? "OK" : "FAIL"));
    } else {
        r.kv("identity", "skipped");
        r.text("identity skipped: C_BS needs a simple graph");
    }
    return routes && identity ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, Report& r)
{
    const Graph g = load_graph(cfg);
    const FrobeniusAlgebra A = load_algebra(cfg);
    GeneratorMode mode = GeneratorMode::AllCycles;
    if (cfg.generator_mode == "triangles-only")
        mode = GeneratorMode::TrianglesOnly;
    else if (cfg.generator_mode != "all-cycles")
        throw InputError("--generator-mode must be all-cycles or triangles-only");
    bool ok = true;
    r.kv("command", "verify");
    for (const auto& c : run_verify_suite(g, A, mode)) {
        ok = ok && c.status != CheckStatus::Fail;
        r.kv("check." + c.name, to_string(c.status) + "\t" + c.detail);
        r.text(to_string(c.status) + "  " + c.name + ": " + c.detail);
    }
    r.kv("result", ok ? "pass" : "fail");
    r.text(ok ? "all checks passed" : "some checks FAILED");
    return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Graph cohomology of configuration-space models"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool needs_algebra) {
        sub->add_option("--graph", cfg.graph_path, "graph file ('vertices N' then 'i j' lines)")->required();
        auto* alg = sub->add_option("--algebra", cfg.algebra, "built-in (ground, s2, s4, cp2, t2) or algebra file");
        if (!needs_algebra)
            alg->description("algebra for the graded Euler identity (default s2)");
        sub->add_option("--field", cfg.field, "Q or Fp, e.g. F101 (default: $GRAPHCOHOM_FIELD, else Q)");
        sub->add_option("--format", cfg.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    };
    auto* betti_cmd = app.add_subcommand("betti", "chain dimensions and Betti numbers of one complex");
    add_common(betti_cmd, true);
    betti_cmd->add_option("--complex", cfg.complex, "cbs, dual, rn or conn")
        ->check(CLI::IsMember({"cbs", "dual", "rn", "conn"}));
    auto* qi_cmd = app.add_subcommand("quasi-iso", "compare Betti tables of the dual complex and R_n");
    add_common(qi_cmd, true);
    auto* chrom_cmd = app.add_subcommand("chromatic", "chromatic polynomial and the graded Euler identity");
    add_common(chrom_cmd, false);
    auto* verify_cmd = app.add_subcommand("verify", "run every invariant check");
    add_common(verify_cmd, true);
    verify_cmd->add_option("--generator-mode", cfg.generator_mode, "ideal generators: all-cycles or triangles-only");

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    Report report(out, cfg.format == "structured");
    try {
        if (betti_cmd->parsed())
            return cmd_betti(cfg, report);
        if (qi_cmd->parsed())
            return cmd_quasi_iso(cfg, report);
        if (chrom_cmd->parsed())
            return cmd_chromatic(cfg, report);
        return cmd_verify(cfg, report);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace gcoh
