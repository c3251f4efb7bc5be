#include "fracbvp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "fracbvp/certifier.hpp"
#include "fracbvp/reports.hpp"

namespace fracbvp {

namespace {

// The two built-in problems ship in the same key = value syntax the loader
// accepts, so file round-trips reproduce them exactly.
constexpr const char* kExample1Text = R"(# built-in problem: example1
alpha = 2.5
gamma = 0.5
p = 3
f = exp(-t)/5 - (1/(164*pi))*atan(x^3 + y^3)
g = (1/10)*t^(2/3)*x
q1 = (1/20)*x
q2 = (1/20)*x
w = exp(-t)/5
c = 1/(164*pi)
phi1 = (1/10)*t^(2/3)
k1 = 1/20
k2 = 1/20
R = 2
g_gamma_star = 4.047
w1 = 1/5
)";

constexpr const char* kExample2Text = R"(# built-in problem: example2
alpha = 2.7
gamma = 0.7
p = 4
f = sin(t)/10 + (1/200)*cos(x^4 + y^4)
g = (1/(9*pi))*t^(3/4)*atan(x)
q1 = (1/10)*sin(x)
q2 = (1/10)*sin(x)
w = sin(t)/10
c = 1/200
phi1 = (1/(9*pi))*t^(3/4)
k1 = 1/10
k2 = 1/10
R = 2
g_gamma_star = 3.9995
w1 = 1/10
)";

double constant_value(const ExprAst& ast, const std::string& key) {
    if (!ast.is_constant())
        throw ProblemFormatError("value of '" + key + "' must be constant");
    return ast.eval(Bindings{});
}

void require_vars(const ExprAst& ast, const std::string& key, bool allow_t,
                  bool allow_x, bool allow_y) {
    if ((!allow_t && ast.uses(Var::T)) || (!allow_x && ast.uses(Var::X)) ||
        (!allow_y && ast.uses(Var::Y)))
        throw ProblemFormatError("expression '" + key + "' uses a variable outside its signature");
}

} // namespace

std::vector<std::string> builtin_problem_names() { return {"example1", "example2"}; }

bool is_builtin_problem(const std::string& name) {
    return name == "example1" || name == "example2";
}

ProblemSpec builtin_problem(const std::string& name) {
    if (name == "example1") return parse_problem_text(kExample1Text);
    if (name == "example2") return parse_problem_text(kExample2Text);
    throw std::invalid_argument("unknown builtin problem '" + name + "'");
}

ProblemSpec parse_problem_text(std::string_view text) {
    std::map<std::string, std::string> kv;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ProblemFormatError("line " + std::to_string(line_no) + ": expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ProblemFormatError("line " + std::to_string(line_no) + ": empty key or value");
        if (!kv.emplace(key, value).second)
            throw ProblemFormatError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }

    static const std::vector<std::string> required = {
        "alpha", "gamma", "p", "f", "g", "q1", "q2", "w", "c", "phi1", "k1", "k2", "R"};
    static const std::vector<std::string> optional = {"g_gamma_star", "w1"};
    for (const std::string& key : required)
        if (!kv.count(key))
            throw ProblemFormatError("missing key '" + key + "'");
    for (const auto& [key, value] : kv) {
        (void)value;
        const bool known =
            std::find(required.begin(), required.end(), key) != required.end() ||
            std::find(optional.begin(), optional.end(), key) != optional.end();
        if (!known) throw ProblemFormatError("unknown key '" + key + "'");
    }

    auto expr_of = [&](const std::string& key) {
        try {
            return parse_expr(kv.at(key));
        } catch (const ParseError& e) {
            throw ProblemFormatError("key '" + key + "': " + e.what());
        }
    };
    auto number_of = [&](const std::string& key) {
        return constant_value(expr_of(key), key);
    };

    const ExprAst f = expr_of("f");
    const ExprAst g = expr_of("g");
    const ExprAst q1 = expr_of("q1");
    const ExprAst q2 = expr_of("q2");
    const ExprAst w = expr_of("w");
    const ExprAst phi1 = expr_of("phi1");
    require_vars(f, "f", true, true, true);
    require_vars(g, "g", true, true, false);
    require_vars(q1, "q1", false, true, false);
    require_vars(q2, "q2", false, true, false);
    require_vars(w, "w", true, false, false);
    require_vars(phi1, "phi1", true, false, false);

    ProblemSpec spec{
        FracOrder(number_of("alpha")),
        FracOrder(number_of("gamma")),
        number_of("p"),
        f,
        g,
        q1,
        q2,
        HypothesisData{w, number_of("c"), phi1, number_of("k1"), number_of("k2"),
                       number_of("R")},
        std::nullopt,
        std::nullopt,
    };
    if (kv.count("g_gamma_star")) spec.g_gamma_star = number_of("g_gamma_star");
    if (kv.count("w1")) spec.w1 = number_of("w1");
    return spec;
}

ProblemSpec load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ProblemFormatError("cannot read problem file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_problem_text(buf.str());
    } catch (const ProblemFormatError& e) {
        throw ProblemFormatError(path + ": " + e.what());
    }
}

std::string canonical_text(const ProblemSpec& spec) {
    std::ostringstream out;
    out << "alpha = " << format_double(spec.alpha.value()) << '\n'
        << "gamma = " << format_double(spec.gamma.value()) << '\n'
        << "p = " << format_double(spec.p) << '\n'
        << "f = " << spec.f.print() << '\n'
        << "g = " << spec.g.print() << '\n'
        << "q1 = " << spec.q1.print() << '\n'
        << "q2 = " << spec.q2.print() << '\n'
        << "w = " << spec.hyp.w.print() << '\n'
        << "c = " << format_double(spec.hyp.c) << '\n'
        << "phi1 = " << spec.hyp.phi1.print() << '\n'
        << "k1 = " << format_double(spec.hyp.k1) << '\n'
        << "k2 = " << format_double(spec.hyp.k2) << '\n'
        << "R = " << format_double(spec.hyp.R) << '\n';
    if (spec.g_gamma_star)
        out << "g_gamma_star = " << format_double(*spec.g_gamma_star) << '\n';
    if (spec.w1)
        out << "w1 = " << format_double(*spec.w1) << '\n';
    return out.str();
}

bool same_spec(const ProblemSpec& a, const ProblemSpec& b) {
    return a.alpha == b.alpha && a.gamma == b.gamma && a.p == b.p && a.f == b.f &&
           a.g == b.g && a.q1 == b.q1 && a.q2 == b.q2 && a.hyp.w == b.hyp.w &&
           a.hyp.c == b.hyp.c && a.hyp.phi1 == b.hyp.phi1 && a.hyp.k1 == b.hyp.k1 &&
           a.hyp.k2 == b.hyp.k2 && a.hyp.R == b.hyp.R &&
           a.g_gamma_star == b.g_gamma_star && a.w1 == b.w1;
}

const char* to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Warn: return "warn";
        case CheckStatus::Fail: return "fail";
    }
    return "?";
}

bool ValidationReport::ok() const { return failures() == 0; }

int ValidationReport::failures() const {
    int n = 0;
    for (const CheckItem& item : items)
        if (item.status == CheckStatus::Fail) ++n;
    return n;
}

int ValidationReport::warnings() const {
    int n = 0;
    for (const CheckItem& item : items)
        if (item.status == CheckStatus::Warn) ++n;
    return n;
}

namespace {

void push(ValidationReport& report, const std::string& name, bool pass,
          const std::string& detail, CheckStatus on_fail = CheckStatus::Fail) {
    report.items.push_back({name, pass ? CheckStatus::Pass : on_fail, detail});
}

} // namespace

ValidationReport validate_spec(const ProblemSpec& spec, const ValidateOptions& options) {
    ValidationReport report;
    const double a = spec.alpha.value();
    const double g = spec.gamma.value();
    const double R = spec.hyp.R;

    push(report, "alpha_in_(2,3)", spec.alpha.in_two_three(),
         "alpha = " + format_double(a));
    push(report, "p_greater_1", spec.p > 1.0, "p = " + format_double(spec.p));
    const bool gamma_ok = spec.p > 1.0 && g > 1.0 / spec.p && g <= 1.0;
    push(report, "gamma_in_(1/p,1]", gamma_ok,
         "gamma = " + format_double(g) + ", 1/p = " +
             format_double(spec.p > 1.0 ? 1.0 / spec.p : 0.0));
    push(report, "c_nonnegative", spec.hyp.c >= 0.0, "c = " + format_double(spec.hyp.c));
    push(report, "k1_nonnegative", spec.hyp.k1 >= 0.0, "k1 = " + format_double(spec.hyp.k1));
    push(report, "k2_nonnegative", spec.hyp.k2 >= 0.0, "k2 = " + format_double(spec.hyp.k2));
    push(report, "R_positive", R > 0.0, "R = " + format_double(R));

    // structural zeros, sampled on 33 points each
    constexpr int kSamples = 33;
    const double tol = 1e-12;
    auto structural = [&](const std::string& name, auto&& value_at) {
        double worst = 0.0;
        bool eval_ok = true;
        std::string detail;
        for (int i = 0; i < kSamples; ++i) {
            try {
                worst = std::max(worst, std::fabs(value_at(i)));
            } catch (const EvalError& e) {
                eval_ok = false;
                detail = e.what();
                break;
            }
        }
        if (eval_ok) detail = "max |value| = " + format_double(worst);
        push(report, name, eval_ok && worst <= tol, detail);
    };
    structural("g(t,0)=0", [&](int i) {
        Bindings b;
        b.t = static_cast<double>(i) / (kSamples - 1);
        b.x = 0.0;
        return spec.g.eval(b);
    });
    structural("g(0,y)=0", [&](int i) {
        Bindings b;
        b.t = 0.0;
        b.x = -R + 2.0 * R * i / (kSamples - 1);
        return spec.g.eval(b);
    });
    structural("q1(0)=0", [&](int) {
        Bindings b;
        b.x = 0.0;
        return spec.q1.eval(b);
    });
    structural("q2(0)=0", [&](int) {
        Bindings b;
        b.x = 0.0;
        return spec.q2.eval(b);
    });

    // hypothesis data must be nonnegative on the grid
    auto nonneg = [&](const std::string& name, const ExprAst& expr) {
        double worst = 0.0;
        bool eval_ok = true;
        std::string detail;
        for (int i = 0; i <= options.grid.intervals(); ++i) {
            Bindings b;
            b.t = options.grid.node(i);
            try {
                worst = std::min(worst, expr.eval(b));
            } catch (const EvalError& e) {
                eval_ok = false;
                detail = e.what();
                break;
            }
        }
        if (eval_ok) detail = "min value = " + format_double(worst);
        push(report, name, eval_ok && worst >= -1e-15, detail);
    };
    nonneg("w_nonnegative", spec.hyp.w);
    nonneg("phi1_nonnegative", spec.hyp.phi1);

    if (options.run_probes) {
        // advisory: hypothesis data are inputs, violations only warn
        try {
            const ProbeReport lp = lipschitz_probe(spec, options.probe_samples, options.seed);
            push(report, "lipschitz_probe", lp.violations == 0,
                 std::to_string(lp.violations) + " violations in " +
                     std::to_string(lp.samples) + " samples",
                 CheckStatus::Warn);
            const ProbeReport gr = growth_probe(spec, options.probe_samples, options.seed);
            push(report, "growth_probe", gr.violations == 0,
                 std::to_string(gr.violations) + " violations in " +
                     std::to_string(gr.samples) + " samples",
                 CheckStatus::Warn);
        } catch (const EvalError& e) {
            push(report, "probes", false, e.what(), CheckStatus::Warn);
        }
    }
    return report;
}

} // namespace fracbvp
