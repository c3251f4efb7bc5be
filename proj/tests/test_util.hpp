#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "fracbvp/grid.hpp"

namespace testutil {

inline double max_abs_diff(const fracbvp::SampledFn& a, const fracbvp::SampledFn& b) {
    double m = 0.0;
    for (int i = 0; i < a.grid().points(); ++i)
        m = std::max(m, std::fabs(a.at(i) - b.at(i)));
    return m;
}

inline double max_err_vs(const fracbvp::SampledFn& a,
                         const std::function<double(double)>& exact) {
    double m = 0.0;
    for (int i = 0; i < a.grid().points(); ++i)
        m = std::max(m, std::fabs(a.at(i) - exact(a.grid().node(i))));
    return m;
}

// composite Simpson on [lo,hi]; reference quadrature for oracle integrals
inline double simpson(const std::function<double(double)>& f, double lo, double hi,
                      int intervals) {
    if (intervals % 2) ++intervals;
    const double h = (hi - lo) / intervals;
    double acc = f(lo) + f(hi);
    for (int i = 1; i < intervals; ++i)
        acc += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

struct CommandResult {
    int exit_code;
    std::string output;
};

inline CommandResult run_command(const std::string& command) {
    const std::string out_path = "cli_test_output.tmp";
    const std::string full = command + " > " + out_path + " 2> cli_test_stderr.tmp";
    const int status = std::system(full.c_str());
    std::ifstream in(out_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    int code = -1;
    if (status != -1) code = WEXITSTATUS(status);
    return {code, buf.str()};
}

inline std::string write_temp_file(const std::string& name, const std::string& content) {
    std::ofstream out(name);
    out << content;
    return name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace testutil
