// Command-line front end: solving, checking, oracle runs, the 3-SAT
// reduction, instance generation and benchmarks.
//
// Exit codes: 0 solvable/success, 1 unsolvable/invalid, 2 input error,
// 3 internal invariant violation.

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tropde/tropde.hpp"

namespace {

using namespace tropde;

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kInputError = 2;
constexpr int kInternal = 3;

class InputError : public Error {
public:
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

LinearSystem load_linear(const std::string& path) {
    auto any = parse_system_file(read_file(path));
    if (!std::holds_alternative<LinearSystem>(any)) throw InputError(path + ": expected a linear system");
    return std::get<LinearSystem>(std::move(any));
}

NonlinearSystem load_as_nonlinear(const std::string& path) {
    auto any = parse_system_file(read_file(path));
    if (auto* lin = std::get_if<LinearSystem>(&any)) return linear_to_nonlinear(*lin);
    return std::get<NonlinearSystem>(std::move(any));
}

std::vector<Support> load_solution(const std::string& path, std::size_t n) {
    auto sup = parse_solution_file(read_file(path));
    if (sup.size() != n) {
        throw InputError(path + ": " + std::to_string(sup.size()) + " supports for " + std::to_string(n) +
                         " variables");
    }
    return sup;
}

void print_trace(const SolveReport& rep) {
    for (std::size_t s = 0; s < rep.steps.size(); ++s) {
        const auto& st = rep.steps[s];
        std::cout << "step " << s + 1 << ": " << to_string(st.kind) << " x" << st.variable + 1 << " [" << st.first
                  << ", " << st.last << "] eq " << st.equation + 1;
        if (st.jump_p) std::cout << " p=" << *st.jump_p;
        std::cout << "\n";
    }
}

int report_outcome(const SolveReport& rep, bool trace, const std::string& solution_out) {
    if (trace) print_trace(rep);
    std::cout << "steps=" << rep.discard_count << " finite_steps=" << rep.finite_steps << " jumps=" << rep.jumps;
    if (rep.cap) std::cout << " cap=" << *rep.cap;
    std::cout << "\n";
    if (const auto* u = std::get_if<Unsolvable>(&rep.outcome)) {
        std::cout << "UNSOLVABLE equation " << u->equation + 1 << "\n";
        return kNo;
    }
    const auto& sol = std::get<Solvable>(rep.outcome);
    std::cout << (sol.only_infinite ? "SOLVABLE (only the infinite solution)\n" : "SOLVABLE\n");
    const auto text = write_solution_file(sol.supports);
    std::cout << text;
    if (!solution_out.empty()) write_file(solution_out, text);
    return kOk;
}

std::string status_text(const EquationStatus& st) {
    if (is_satisfied(st)) return "satisfied";
    if (const auto* s = std::get_if<ViolatedAtSlot>(&st)) {
        return "violated at " + slot_text(s->slot) + " (value " + s->value.to_string() + ")";
    }
    return "violated at free term (value " + std::get<ViolatedAtFree>(st).value.to_string() + ")";
}

int cmd_check(const std::string& file, const std::string& solfile) {
    const auto any = parse_system_file(read_file(file));
    std::optional<std::size_t> first_bad;
    if (const auto* lin = std::get_if<LinearSystem>(&any)) {
        const auto sup = load_solution(solfile, lin->n());
        for (std::size_t l = 0; l < lin->k(); ++l) {
            const auto st = equation_status(lin->equation(l), sup);
            std::cout << "eq " << l + 1 << ": " << status_text(st) << "\n";
            if (!is_satisfied(st) && !first_bad) first_bad = l;
        }
    } else {
        const auto& nl = std::get<NonlinearSystem>(any);
        const auto sup = load_solution(solfile, nl.n());
        for (std::size_t l = 0; l < nl.k(); ++l) {
            const bool ok = equation_satisfied_nl(nl.equations()[l], sup);
            std::cout << "eq " << l + 1 << ": " << (ok ? "satisfied" : "violated") << "\n";
            if (!ok && !first_bad) first_bad = l;
        }
    }
    if (first_bad) {
        std::cout << "NOT A SOLUTION first violated equation " << *first_bad + 1 << "\n";
        return kNo;
    }
    std::cout << "SOLUTION\n";
    return kOk;
}

int cmd_nlverify(const std::string& file, const std::string& solfile, std::optional<std::uint64_t> cap) {
    const auto nl = load_as_nonlinear(file);
    const auto sup = load_solution(solfile, nl.n());
    const std::uint64_t c = cap ? *cap : bound_N1(nl);
    const bool ok = verify_certificate(nl, sup, c);
    std::cout << (ok ? "VALID" : "INVALID") << " certificate (tail cap " << c << ")\n";
    return ok ? kOk : kNo;
}

int cmd_oracle(const std::string& file, std::optional<std::uint64_t> tail_cap) {
    const auto sys = load_linear(file);
    auto caps = default_caps(sys);
    if (tail_cap) caps.tail_cap = *tail_cap;
    const auto res = oracle_minimal_linear(sys, caps);
    if (!res.solvable) {
        std::cout << "UNSAT solutions=0\n";
        return kNo;
    }
    std::cout << "SOLVABLE solutions=" << res.solution_count
              << " join_is_solution=" << (res.join_is_solution ? "yes" : "no") << "\n"
              << write_solution_file(res.join);
    return res.join_is_solution ? kOk : kInternal;
}

int cmd_nlsolve(const std::string& file, std::optional<std::uint64_t> tail_cap) {
    const auto nl = load_as_nonlinear(file);
    auto caps = default_caps(nl);
    if (tail_cap) caps.tail_cap = *tail_cap;
    const auto found = oracle_solve_nonlinear(nl, caps);
    if (!found) {
        std::cout << "UNSAT\n";
        return kNo;
    }
    std::cout << "SOLVABLE\n" << write_solution_file(*found);
    return kOk;
}

int cmd_from_cnf(const std::string& cnf_file, const std::string& out) {
    const auto cnf = parse_dimacs(read_file(cnf_file));
    const auto sys = reduce_3sat(cnf);
    std::string text = "# reduced from " + cnf_file + ": " + std::to_string(cnf.num_vars) + " variables, " +
                       std::to_string(cnf.clauses.size()) + " clauses\n";
    text += "# orders 2j / 2j+2n carry y_j / not y_j\n";
    text += serialize_system(sys);
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        write_file(out, text);
    }
    return kOk;
}

int cmd_extract(const std::string& cnf_file, const std::string& solfile) {
    const auto cnf = parse_dimacs(read_file(cnf_file));
    const auto sup = load_solution(solfile, 1);
    Assignment a;
    try {
        a = support_to_assignment(sup[0], cnf.num_vars);
    } catch (const InvalidWitness& e) {
        std::cout << "INVALID witness: " << e.what() << "\n";
        return kNo;
    }
    for (std::size_t j = 0; j < a.size(); ++j) std::cout << (j ? " " : "") << "y" << j << "=" << a[j];
    std::cout << "\n";
    const bool ok = satisfies(cnf, a);
    std::cout << (ok ? "SATISFIES" : "DOES NOT SATISFY") << " the formula\n";
    return ok ? kOk : kNo;
}

struct BenchRow {
    std::size_t id = 0;
    std::size_t n = 0, k = 0;
    Order r = 0;
    std::uint64_t M = 0;
    std::string outcome;
    std::size_t steps = 0, finite_steps = 0, jumps = 0;
    std::uint64_t max_p = 0;
    std::int64_t wall_nanos = 0;
};

struct Suite {
    GeneratorConfig base;
    bool univariate = false;
};

Suite suite_named(const std::string& name) {
    // n, r, k, M, density, free_term_probability, seed
    if (name == "small") return {{10, 10, 10, 100, 0.5, 0.5, 0}, false};
    if (name == "homogeneous") return {{10, 10, 10, 100, 0.5, 0.0, 0}, false};
    if (name == "large") return {{50, 50, 50, 1000, 0.5, 0.5, 0}, false};
    if (name == "univar") return {{1, 10000, 10000, 1000000, 8.0 / 10001.0, 0.5, 0}, true};
    if (name == "univar-small") return {{1, 6, 4, 6, 0.5, 0.5, 0}, true};
    throw InputError("unknown suite '" + name + "' (small, homogeneous, large, univar, univar-small)");
}

int cmd_bench(const std::string& suite_name, const std::string& csv, std::size_t count, std::uint64_t seed,
              unsigned jobs) {
    const Suite suite = suite_named(suite_name);
    std::vector<BenchRow> rows(count);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> internal_error{false};
    auto worker = [&] {
        for (std::size_t id; (id = next++) < count;) {
            auto cfg = suite.base;
            cfg.seed = seed + id;
            const auto sys = generate_random_system(cfg);
            BenchRow row{id, sys.n(), sys.k(), sys.r(), sys.M(), {}, 0, 0, 0, 0, 0};
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const auto rep = suite.univariate ? solve_univar(sys, false) : solve_minimal(sys, {BoundChoice::Safe, false});
                row.outcome = rep.solvable() ? "solvable" : "unsolvable";
                row.steps = rep.discard_count;
                row.finite_steps = rep.finite_steps;
                row.jumps = rep.jumps;
                row.max_p = rep.max_p;
            } catch (const InternalBoundViolation&) {
                row.outcome = "internal-error";
                internal_error = true;
            }
            row.wall_nanos =
                std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
            rows[id] = row;
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::max(1U, jobs); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::ostringstream out;
    out << "id,n,r,k,M,outcome,steps,finite_steps,jumps,max_p,wall_nanos\n";
    for (const auto& row : rows) {
        out << row.id << ',' << row.n << ',' << row.r << ',' << row.k << ',' << row.M << ',' << row.outcome << ','
            << row.steps << ',' << row.finite_steps << ',' << row.jumps << ',' << row.max_p << ',' << row.wall_nanos
            << '\n';
    }
    if (csv.empty() || csv == "-") {
        std::cout << out.str();
    } else {
        write_file(csv, out.str());
    }
    return internal_error ? kInternal : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solver for tropical differential equations"};
    app.require_subcommand(1);

    std::string file, solfile, out, bound = "safe", suite;
    bool trace = false;
    std::optional<std::uint64_t> cap;

    auto* solve = app.add_subcommand("solve", "minimal solution of a linear system");
    solve->add_option("FILE", file)->required();
    solve->add_option("--bound", bound, "tail cap: paper or safe")->check(CLI::IsMember({"paper", "safe"}));
    solve->add_flag("--trace", trace, "print every discard step");
    solve->add_option("--solution", out, "write the solution file here");

    auto* solve1 = app.add_subcommand("solve1", "one-variable jump algorithm");
    solve1->add_option("FILE", file)->required();
    solve1->add_flag("--trace", trace, "print every step");
    solve1->add_option("--solution", out, "write the solution file here");

    auto* check = app.add_subcommand("check", "evaluate each equation on a solution file");
    check->add_option("FILE", file)->required();
    check->add_option("SOLFILE", solfile)->required();

    auto* nlverify = app.add_subcommand("nlverify", "verify a nonlinear certificate");
    nlverify->add_option("FILE", file)->required();
    nlverify->add_option("SOLFILE", solfile)->required();
    nlverify->add_option("--cap", cap, "largest admissible tail start (default N1)");

    auto* oracle = app.add_subcommand("oracle", "brute-force minimal solution of a linear system");
    oracle->add_option("FILE", file)->required();
    oracle->add_option("--tail-cap", cap, "largest enumerated tail start");

    auto* nlsolve = app.add_subcommand("nlsolve", "brute-force search for a nonlinear solution");
    nlsolve->add_option("FILE", file)->required();
    nlsolve->add_option("--tail-cap", cap, "largest enumerated tail start");

    auto* from_cnf = app.add_subcommand("from-cnf", "reduce a DIMACS 3-CNF formula to a one-variable system");
    from_cnf->add_option("FILE", file)->required();
    from_cnf->add_option("-o,--output", out, "output system file (default stdout)");

    auto* extract = app.add_subcommand("extract", "read a truth assignment off a solution of a reduced system");
    extract->add_option("FILE", file)->required();
    extract->add_option("SOLFILE", solfile)->required();

    GeneratorConfig gen_cfg;
    auto* gen = app.add_subcommand("gen", "generate a random linear system");
    gen->add_option("--n", gen_cfg.n)->required();
    gen->add_option("--r", gen_cfg.r)->required();
    gen->add_option("--k", gen_cfg.k)->required();
    gen->add_option("--M", gen_cfg.M)->required();
    gen->add_option("--density", gen_cfg.density)->check(CLI::Range(0.0, 1.0));
    gen->add_option("--free-prob", gen_cfg.free_term_probability)->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", gen_cfg.seed);
    gen->add_option("-o,--output", out, "output file (default stdout)");

    std::size_t count = 10;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    auto* bench = app.add_subcommand("bench", "time a suite of random instances");
    bench->add_option("--suite", suite, "small, homogeneous, large, univar, univar-small")->required();
    bench->add_option("--csv", out, "CSV output (default stdout)");
    bench->add_option("--count", count, "number of instances");
    bench->add_option("--seed", seed, "seed of the first instance");
    bench->add_option("--jobs", jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*solve) {
            const auto sys = load_linear(file);
            const auto choice = bound == "paper" ? BoundChoice::Paper : BoundChoice::Safe;
            return report_outcome(solve_minimal(sys, {choice, trace}), trace, out);
        }
        if (*solve1) return report_outcome(solve_univar(load_linear(file), trace), trace, out);
        if (*check) return cmd_check(file, solfile);
        if (*nlverify) return cmd_nlverify(file, solfile, cap);
        if (*oracle) return cmd_oracle(file, cap);
        if (*nlsolve) return cmd_nlsolve(file, cap);
        if (*from_cnf) return cmd_from_cnf(file, out);
        if (*extract) return cmd_extract(file, solfile);
        if (*gen) {
            const auto text = serialize_system(generate_random_system(gen_cfg));
            if (out.empty() || out == "-") {
                std::cout << text;
            } else {
                write_file(out, text);
            }
            return kOk;
        }
        if (*bench) return cmd_bench(suite, out, count, seed, jobs);
    } catch (const InternalBoundViolation& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return kInternal;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
