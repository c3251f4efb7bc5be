#include "fracbvp/reports.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace fracbvp {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

JsonWriter::JsonWriter(std::ostream& os) : os_(os) {}

void JsonWriter::comma() {
    if (needs_comma_) os_ << ",";
    os_ << "\n";
    indent();
    needs_comma_ = false;
}

void JsonWriter::indent() {
    for (int i = 0; i < depth_; ++i) os_ << "  ";
}

void JsonWriter::begin_object() {
    os_ << "{";
    ++depth_;
    needs_comma_ = false;
}

void JsonWriter::end_object() {
    --depth_;
    os_ << "\n";
    indent();
    os_ << "}";
    needs_comma_ = true;
}

void JsonWriter::begin_array(const std::string& name) {
    key(name);
    os_ << "[";
    ++depth_;
    needs_comma_ = false;
}

void JsonWriter::end_array() {
    --depth_;
    os_ << "\n";
    indent();
    os_ << "]";
    needs_comma_ = true;
}

void JsonWriter::key(const std::string& name) {
    comma();
    os_ << '"' << name << "\": ";
}

void JsonWriter::value(double v) {
    os_ << format_double(v);
    needs_comma_ = true;
}

void JsonWriter::value(int v) {
    os_ << v;
    needs_comma_ = true;
}

void JsonWriter::value(bool v) {
    os_ << (v ? "true" : "false");
    needs_comma_ = true;
}

void JsonWriter::value(const std::string& v) {
    os_ << '"';
    for (char c : v) {
        switch (c) {
            case '"': os_ << "\\\""; break;
            case '\\': os_ << "\\\\"; break;
            case '\n': os_ << "\\n"; break;
            case '\t': os_ << "\\t"; break;
            default: os_ << c;
        }
    }
    os_ << '"';
    needs_comma_ = true;
}

void JsonWriter::kv(const std::string& name, double v) { key(name); value(v); }
void JsonWriter::kv(const std::string& name, int v) { key(name); value(v); }
void JsonWriter::kv(const std::string& name, bool v) { key(name); value(v); }
void JsonWriter::kv(const std::string& name, const std::string& v) { key(name); value(v); }

void JsonWriter::array_value(double v) {
    comma();
    value(v);
}

void JsonWriter::begin_object_in_array() {
    comma();
    begin_object();
}

void JsonWriter::finish() { os_ << "\n"; }

namespace {

void write_spec_echo(JsonWriter& w, const ProblemSpec& spec) {
    w.key("spec_echo");
    w.begin_object();
    w.kv("alpha", spec.alpha.value());
    w.kv("gamma", spec.gamma.value());
    w.kv("p", spec.p);
    w.kv("f", spec.f.print());
    w.kv("g", spec.g.print());
    w.kv("q1", spec.q1.print());
    w.kv("q2", spec.q2.print());
    w.kv("w", spec.hyp.w.print());
    w.kv("c", spec.hyp.c);
    w.kv("phi1", spec.hyp.phi1.print());
    w.kv("k1", spec.hyp.k1);
    w.kv("k2", spec.hyp.k2);
    w.kv("R", spec.hyp.R);
    w.end_object();
}

void write_certificate_body(JsonWriter& w, const Certificate& cert) {
    w.begin_object();
    w.kv("contraction_constant", cert.contraction_constant);
    w.kv("contraction_ok", cert.contraction_ok);
    w.kv("g_gamma_star", cert.g_gamma_star);
    w.kv("g_gamma_mode", std::string(to_string(cert.g_gamma_mode)));
    w.kv("w1", cert.w1);
    w.kv("w1_mode", std::string(to_string(cert.w1_mode)));
    w.kv("h4_slack", cert.h4_slack);
    w.kv("h4_ok", cert.h4_ok);
    if (cert.witness_R) w.kv("witness_R", *cert.witness_R);
    write_spec_echo(w, cert.spec_echo);
    w.end_object();
}

void write_solve_body(JsonWriter& w, const SolveReport& report) {
    w.begin_object();
    w.kv("converged", report.converged);
    w.kv("iterations", report.iterations);
    w.kv("fixed_point_residual", report.fixed_point_residual);
    w.kv("solution_norm", report.solution_norm);
    w.kv("damping_used", report.damping_used);
    w.key("bc_residuals");
    w.begin_object();
    w.kv("r0", report.bc_residuals.r0);
    w.kv("r1", report.bc_residuals.r1);
    w.kv("r2", report.bc_residuals.r2);
    w.end_object();
    w.begin_array("delta_norms");
    for (double d : report.delta_norms) w.array_value(d);
    w.end_array();
    w.kv("cert_contraction_ok", report.cert_contraction_ok);
    w.kv("cert_h4_ok", report.cert_h4_ok);
    w.end_object();
}

} // namespace

void write_certificate_json(const Certificate& cert, std::ostream& os) {
    JsonWriter w(os);
    write_certificate_body(w, cert);
    w.finish();
}

void write_validation_json(const ValidationReport& report, std::ostream& os) {
    JsonWriter w(os);
    w.begin_object();
    w.kv("ok", report.ok());
    w.kv("failures", report.failures());
    w.kv("warnings", report.warnings());
    w.begin_array("items");
    for (const CheckItem& item : report.items) {
        w.begin_object_in_array();
        w.kv("name", item.name);
        w.kv("status", std::string(to_string(item.status)));
        w.kv("detail", item.detail);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    w.finish();
}

void write_solve_report_json(const SolveReport& report, std::ostream& os) {
    JsonWriter w(os);
    write_solve_body(w, report);
    w.finish();
}

namespace {

struct ReferenceConstants {
    double contraction;
    double slack;
};

// Reference values printed with the built-in examples' source write-ups.
ReferenceConstants reference_constants(const std::string& name) {
    if (name == "example1") return {0.368, -0.301};
    if (name == "example2") return {0.323, -0.163};
    throw std::invalid_argument("no reference constants for '" + name + "'");
}

} // namespace

ReproduceReport reproduce(const std::string& name, const UniformGrid& grid,
                          const SolveOptions& options) {
    const ProblemSpec spec = builtin_problem(name);
    const ReferenceConstants ref = reference_constants(name);

    CertifyOptions cert_options;
    cert_options.g_gamma_mode = GGammaMode::Paper;
    cert_options.w1_mode = W1Mode::Supplied;
    cert_options.grid = grid;
    Certificate cert = certify(spec, cert_options);

    SolveReport solve = fixed_point_solve(spec, grid, options);

    return ReproduceReport{name,
                           grid.intervals(),
                           ref.contraction,
                           cert.contraction_constant,
                           ref.slack,
                           cert.h4_slack,
                           std::move(cert),
                           std::move(solve)};
}

void write_reproduce_json(const ReproduceReport& report, std::ostream& os) {
    JsonWriter w(os);
    w.begin_object();
    w.kv("problem", report.problem);
    w.kv("grid_intervals", report.grid_intervals);
    w.key("contraction_constant");
    w.begin_object();
    w.kv("reference", report.reference_contraction);
    w.kv("computed", report.computed_contraction);
    w.kv("abs_diff", std::fabs(report.computed_contraction - report.reference_contraction));
    w.end_object();
    w.key("h4_slack");
    w.begin_object();
    w.kv("reference", report.reference_slack);
    w.kv("computed", report.computed_slack);
    w.kv("abs_diff", std::fabs(report.computed_slack - report.reference_slack));
    w.end_object();
    w.key("certificate");
    write_certificate_body(w, report.certificate);
    w.key("solve");
    write_solve_body(w, report.solve);
    w.end_object();
    w.finish();
}

} // namespace fracbvp
