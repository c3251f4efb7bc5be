#pragma once

#include <iosfwd>
#include <string>

#include "fracbvp/certifier.hpp"
#include "fracbvp/problem.hpp"
#include "fracbvp/solver.hpp"

namespace fracbvp {

// %.17g rendering used by every serialized number.
std::string format_double(double v);

// Minimal ordered JSON writer: insertion order is emission order and doubles
// are printed with 17 significant digits, so identical inputs give
// byte-identical output.
class JsonWriter {
public:
    explicit JsonWriter(std::ostream& os);
    void begin_object();
    void end_object();
    void begin_array(const std::string& key);
    void end_array();
    void key(const std::string& name);
    void value(double v);
    void value(int v);
    void value(bool v);
    void value(const std::string& v);
    void kv(const std::string& name, double v);
    void kv(const std::string& name, int v);
    void kv(const std::string& name, bool v);
    void kv(const std::string& name, const std::string& v);
    void array_value(double v);
    void begin_object_in_array();
    void finish(); // trailing newline

private:
    void comma();
    void indent();
    std::ostream& os_;
    int depth_ = 0;
    bool needs_comma_ = false;
};

void write_certificate_json(const Certificate& cert, std::ostream& os);
void write_validation_json(const ValidationReport& report, std::ostream& os);
void write_solve_report_json(const SolveReport& report, std::ostream& os);

struct ReproduceReport {
    std::string problem;
    int grid_intervals;
    double reference_contraction;
    double computed_contraction;
    double reference_slack;
    double computed_slack;
    Certificate certificate;
    SolveReport solve;
};

// Certify in reproduction modes (published kernel max, supplied w cap),
// compare against the reference constants stored with the builtin problem,
// then run the fixed-point solver.
ReproduceReport reproduce(const std::string& name, const UniformGrid& grid,
                          const SolveOptions& options = {});

void write_reproduce_json(const ReproduceReport& report, std::ostream& os);

} // namespace fracbvp
