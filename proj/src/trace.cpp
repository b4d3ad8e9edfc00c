#include "ispnav/trace.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ispnav {
namespace {

void append_double(std::string& out, double v) {
    if (std::isinf(v)) {
        out += v > 0 ? "inf" : "-inf";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    out += buf;
}

} // namespace

void write_trace_header(std::ostream& out) {
    out << kTraceHeader << '\n';
}

void write_trace_row(std::ostream& out, const TraceRecord& rec) {
    std::string line;
    line.reserve(200);
    line += std::to_string(rec.step);
    line += ',';
    append_double(line, rec.time);
    line += ',';
    line += rec.agent;
    line += ',';
    append_double(line, rec.x);
    line += ',';
    append_double(line, rec.y);
    line += ',';
    append_double(line, rec.heading);
    line += ',';
    append_double(line, rec.speed);
    line += ',';
    append_double(line, rec.steer_cmd);
    line += ',';
    append_double(line, rec.accel_scaled);
    line += ',';
    append_double(line, rec.accel_ms2);
    line += ',';
    append_double(line, rec.min_tau.value());
    line += ',';
    line += std::to_string(rec.safe_cols);
    line += ',';
    append_double(line, rec.accel_lo);
    line += ',';
    append_double(line, rec.accel_hi);
    line += ',';
    append_double(line, rec.min_sep);
    line += ',';
    line += rec.collided ? '1' : '0';
    line += '\n';
    out << line;
}

std::string trace_to_csv(std::span<const TraceRecord> trace) {
    std::ostringstream out;
    write_trace_header(out);
    for (const TraceRecord& rec : trace) {
        write_trace_row(out, rec);
    }
    return out.str();
}

} // namespace ispnav
