#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fracbvp/certifier.hpp"
#include "fracbvp/fraccalc.hpp"
#include "fracbvp/kernels.hpp"
#include "fracbvp/problem.hpp"
#include "fracbvp/reports.hpp"
#include "fracbvp/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCertificationFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNumericalError = 3;

struct CommonFlags {
    std::string source;       // builtin name or file path
    std::string builtin;
    int n = 1024;
    std::string out;          // empty = stdout
};

void add_source_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("source", flags.source, "builtin problem name or problem file path");
    cmd->add_option("--builtin", flags.builtin, "builtin problem name");
    cmd->add_option("-n,--intervals", flags.n, "grid intervals")->check(CLI::Range(2, 1 << 20));
    cmd->add_option("--out", flags.out, "output path (default stdout)");
}

fracbvp::ProblemSpec resolve_problem(const CommonFlags& flags) {
    if (!flags.builtin.empty()) return fracbvp::builtin_problem(flags.builtin);
    if (flags.source.empty())
        throw fracbvp::ProblemFormatError("no problem given (name a builtin or a file)");
    if (fracbvp::is_builtin_problem(flags.source))
        return fracbvp::builtin_problem(flags.source);
    return fracbvp::load_problem_file(flags.source);
}

template <typename WriteFn>
void emit(const std::string& out, WriteFn&& write) {
    if (out.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open output file '" + out + "'");
    write(os);
}

std::uint64_t probe_seed_from_env() {
    if (const char* env = std::getenv("FRACBVP_SEED"))
        return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
    return fracbvp::kDefaultProbeSeed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracbvp: kernels, existence certificates, and fixed-point solves\n"
                 "for a Caputo boundary value problem on [0,1]"};
    app.require_subcommand(1);

    // certify
    CommonFlags certify_flags;
    std::string g_gamma_mode = "analytic_bound";
    std::string w1_mode = "exact";
    bool r_search = false;
    double r_search_min = 1e-3, r_search_max = 1e3;
    int r_search_steps = 200;
    CLI::App* certify_cmd = app.add_subcommand("certify", "evaluate the existence conditions");
    add_source_flags(certify_cmd, certify_flags);
    certify_cmd->add_option("--g-gamma-mode", g_gamma_mode, "paper | analytic_bound | grid_max");
    certify_cmd->add_option("--w1-mode", w1_mode, "exact | supplied");
    certify_cmd->add_flag("--r-search", r_search, "scan a logarithmic R grid for a witness");
    certify_cmd->add_option("--r-search-min", r_search_min, "R grid lower end");
    certify_cmd->add_option("--r-search-max", r_search_max, "R grid upper end");
    certify_cmd->add_option("--r-search-steps", r_search_steps, "R grid points");

    // solve
    CommonFlags solve_flags;
    double tol = 1e-8, damping = 1.0;
    int max_iter = 500;
    std::string solve_format = "json";
    CLI::App* solve_cmd = app.add_subcommand("solve", "Picard iteration toward a fixed point");
    add_source_flags(solve_cmd, solve_flags);
    solve_cmd->add_option("--tol", tol, "update-norm stopping tolerance");
    solve_cmd->add_option("--max-iter", max_iter, "iteration cap");
    solve_cmd->add_option("--damping", damping, "Picard damping in (0,1]");
    solve_cmd->add_option("--format", solve_format, "json (report) | csv (solution samples)")
        ->check(CLI::IsMember({"json", "csv"}));

    // kernels
    CommonFlags kernels_flags;
    std::string kind = "G";
    double kernel_alpha = 2.5, kernel_gamma = 0.5;
    CLI::App* kernels_cmd = app.add_subcommand("kernels", "tabulate a kernel as CSV");
    kernels_cmd->add_option("--kind", kind, "G | H | Ggamma | Hgamma")
        ->check(CLI::IsMember({"G", "H", "Ggamma", "Hgamma"}));
    kernels_cmd->add_option("--alpha", kernel_alpha, "equation order in (2,3)");
    kernels_cmd->add_option("--gamma", kernel_gamma, "derivative order in (0,1]");
    kernels_cmd->add_option("-n,--intervals", kernels_flags.n, "grid intervals")
        ->check(CLI::Range(2, 1 << 20));
    kernels_cmd->add_option("--out", kernels_flags.out, "output path (default stdout)");

    // validate
    CommonFlags validate_flags;
    CLI::App* validate_cmd = app.add_subcommand("validate", "structural and advisory checks");
    add_source_flags(validate_cmd, validate_flags);

    // reproduce
    CommonFlags reproduce_flags;
    double rep_tol = 1e-8, rep_damping = 1.0;
    int rep_max_iter = 500;
    CLI::App* reproduce_cmd =
        app.add_subcommand("reproduce", "re-run a builtin example against its reference constants");
    add_source_flags(reproduce_cmd, reproduce_flags);
    reproduce_cmd->add_option("--tol", rep_tol, "solver tolerance");
    reproduce_cmd->add_option("--max-iter", rep_max_iter, "solver iteration cap");
    reproduce_cmd->add_option("--damping", rep_damping, "solver damping");

    CLI11_PARSE(app, argc, argv);

    try {
        if (certify_cmd->parsed()) {
            const fracbvp::ProblemSpec spec = resolve_problem(certify_flags);
            fracbvp::CertifyOptions options;
            options.g_gamma_mode = fracbvp::parse_g_gamma_mode(g_gamma_mode);
            options.w1_mode = fracbvp::parse_w1_mode(w1_mode);
            options.grid = fracbvp::UniformGrid(certify_flags.n);
            if (r_search)
                options.r_search = fracbvp::RSearch{r_search_min, r_search_max, r_search_steps};
            const fracbvp::Certificate cert = fracbvp::certify(spec, options);
            emit(certify_flags.out,
                 [&](std::ostream& os) { fracbvp::write_certificate_json(cert, os); });
            return cert.ok() ? kExitOk : kExitCertificationFailed;
        }

        if (solve_cmd->parsed()) {
            const fracbvp::ProblemSpec spec = resolve_problem(solve_flags);
            const fracbvp::UniformGrid grid(solve_flags.n);
            fracbvp::SolveOptions options{tol, max_iter, damping};
            const fracbvp::SolveReport report = fracbvp::fixed_point_solve(spec, grid, options);
            if (solve_format == "csv") {
                const fracbvp::SampledFn dy = fracbvp::caputo_deriv(report.solution, spec.gamma);
                emit(solve_flags.out, [&](std::ostream& os) {
                    fracbvp::write_solution_csv(report.solution, dy, os);
                });
            } else {
                emit(solve_flags.out,
                     [&](std::ostream& os) { fracbvp::write_solve_report_json(report, os); });
            }
            return kExitOk;
        }

        if (kernels_cmd->parsed()) {
            fracbvp::KernelKind k = fracbvp::KernelKind::G;
            if (kind == "H") k = fracbvp::KernelKind::H;
            else if (kind == "Ggamma") k = fracbvp::KernelKind::Ggamma;
            else if (kind == "Hgamma") k = fracbvp::KernelKind::Hgamma;
            const fracbvp::UniformGrid grid(kernels_flags.n);
            const fracbvp::KernelTable table = fracbvp::tabulate(
                k, grid, fracbvp::FracOrder(kernel_alpha), fracbvp::FracOrder(kernel_gamma));
            emit(kernels_flags.out,
                 [&](std::ostream& os) { fracbvp::write_kernel_csv(table, os); });
            return kExitOk;
        }

        if (validate_cmd->parsed()) {
            const fracbvp::ProblemSpec spec = resolve_problem(validate_flags);
            fracbvp::ValidateOptions options;
            options.grid = fracbvp::UniformGrid(validate_flags.n);
            options.seed = probe_seed_from_env();
            const fracbvp::ValidationReport report = fracbvp::validate_spec(spec, options);
            emit(validate_flags.out,
                 [&](std::ostream& os) { fracbvp::write_validation_json(report, os); });
            return report.ok() ? kExitOk : kExitCertificationFailed;
        }

        if (reproduce_cmd->parsed()) {
            std::string name = !reproduce_flags.builtin.empty() ? reproduce_flags.builtin
                                                                : reproduce_flags.source;
            if (!fracbvp::is_builtin_problem(name))
                throw fracbvp::ProblemFormatError("reproduce needs a builtin name: example1 or example2");
            const fracbvp::UniformGrid grid(reproduce_flags.n);
            const fracbvp::ReproduceReport report = fracbvp::reproduce(
                name, grid, fracbvp::SolveOptions{rep_tol, rep_max_iter, rep_damping});
            emit(reproduce_flags.out,
                 [&](std::ostream& os) { fracbvp::write_reproduce_json(report, os); });
            return report.certificate.ok() ? kExitOk : kExitCertificationFailed;
        }
    } catch (const fracbvp::ProblemFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const fracbvp::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const fracbvp::EvalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumericalError;
    }
    return kExitOk;
}
