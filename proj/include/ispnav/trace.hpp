#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "ispnav/sim.hpp"

namespace ispnav {

// Exact trace CSV header; floats print with 9 significant digits and
// infinities as inf/-inf.
inline constexpr std::string_view kTraceHeader =
    "step,time,agent,x,y,heading,speed,steer_cmd,accel_scaled,accel_ms2,min_tau,safe_cols,"
    "accel_lo,accel_hi,min_sep,collided";

void write_trace_header(std::ostream& out);
void write_trace_row(std::ostream& out, const TraceRecord& rec);

std::string trace_to_csv(std::span<const TraceRecord> trace);

} // namespace ispnav
