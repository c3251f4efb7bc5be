#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fracbvp/expr.hpp"
#include "fracbvp/grid.hpp"
#include "fracbvp/orders.hpp"

namespace fracbvp {

inline constexpr std::uint64_t kDefaultProbeSeed = 123456789u;

// Data backing the growth and Lipschitz hypotheses of the existence theorem.
struct HypothesisData {
    ExprAst w;     // function of t; L1 envelope in |f| <= w + c(|u|^p + |v|^p)
    double c;      // >= 0
    ExprAst phi1;  // function of t; Lipschitz envelope of g
    double k1;     // >= 0, Lipschitz constant of q1
    double k2;     // >= 0, Lipschitz constant of q2
    double R;      // > 0, candidate invariant-ball radius
};

struct ProblemSpec {
    FracOrder alpha;  // expected in (2,3)
    FracOrder gamma;  // expected in (1/p, 1]
    double p;         // > 1
    ExprAst f;        // f(t, x, y)
    ExprAst g;        // g(t, x)
    ExprAst q1;       // q1(x)
    ExprAst q2;       // q2(x)
    HypothesisData hyp;

    // Optional published constants used by the reproduction modes.
    std::optional<double> g_gamma_star; // kernel-derivative max used in the source example
    std::optional<double> w1;           // supplied cap for the L1 norm of w

    double conjugate_exponent() const { return p / (p - 1.0); }
};

class ProblemFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> builtin_problem_names();
bool is_builtin_problem(const std::string& name);
ProblemSpec builtin_problem(const std::string& name); // throws std::invalid_argument

// Problem files: UTF-8 "key = value" lines, '#' starts a comment. Required
// keys: alpha, gamma, p, f, g, q1, q2, w, c, phi1, k1, k2, R. Optional:
// g_gamma_star, w1. Numeric values may be constant expressions.
ProblemSpec parse_problem_text(std::string_view text);
ProblemSpec load_problem_file(const std::string& path);

// Canonical "key = value" rendering (stable field order, 17 significant
// digits for numbers, printed ASTs for expressions).
std::string canonical_text(const ProblemSpec& spec);

bool same_spec(const ProblemSpec& a, const ProblemSpec& b);

enum class CheckStatus { Pass, Warn, Fail };

const char* to_string(CheckStatus status);

struct CheckItem {
    std::string name;
    CheckStatus status;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckItem> items;
    bool ok() const;        // no Fail items
    int failures() const;
    int warnings() const;
};

struct ValidateOptions {
    UniformGrid grid = UniformGrid(1024);
    int probe_samples = 10000;
    std::uint64_t seed = kDefaultProbeSeed;
    bool run_probes = true;
};

// Order-range checks, sampled structural zeros (g(t,0), g(0,y), q1(0), q2(0)
// on 33 points), hypothesis-data sign checks, and the advisory Lipschitz /
// growth probes (reported as warnings, never failures).
ValidationReport validate_spec(const ProblemSpec& spec,
                               const ValidateOptions& options = {});

} // namespace fracbvp
