#include "ispnav/field.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <stdexcept>

#include "ispnav/kernels.hpp"

namespace ispnav {

RegionOfInterest RegionOfInterest::clipped(int image_width, int image_height) const noexcept {
    if (is_empty()) return empty();
    RegionOfInterest out{std::max(x_min, 0), std::max(y_min, 0),
                         std::min(x_max, image_width - 1), std::min(y_max, image_height - 1)};
    return out.is_empty() ? empty() : out;
}

RegionOfInterest RegionOfInterest::intersect(const RegionOfInterest& other) const noexcept {
    if (is_empty() || other.is_empty()) return empty();
    RegionOfInterest out{std::max(x_min, other.x_min), std::max(y_min, other.y_min),
                         std::min(x_max, other.x_max), std::min(y_max, other.y_max)};
    return out.is_empty() ? empty() : out;
}

IspField::IspField(int width, int height) : width_(width), height_(height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("IspField: dimensions must be >= 1");
    }
    cells_.assign(static_cast<std::size_t>(width) * height, PotentialTuple::background());
}

IspField write_roi(IspField field, const RegionOfInterest& roi, const PotentialTuple& value) {
    const RegionOfInterest clipped = roi.clipped(field.width_, field.height_);
    if (!clipped.is_empty()) {
        kernels::write_roi_cells(field.cells_, field.width_, clipped, value);
    }
    return field;
}

IspField compose(const IspField& a, const IspField& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw std::invalid_argument("compose: field dimensions differ");
    }
    IspField out = a;
    kernels::compose_cells_into(out.cells_, b.cells());
    return out;
}

IspField compose_into(IspField acc, const IspField& other) {
    if (acc.width() != other.width() || acc.height() != other.height()) {
        throw std::invalid_argument("compose: field dimensions differ");
    }
    kernels::compose_cells_into(acc.cells_, other.cells());
    return acc;
}

IspField compose_many(std::span<const IspField> fields, int width, int height) {
    IspField acc(width, height);
    for (const IspField& f : fields) {
        acc = compose_into(std::move(acc), f);
    }
    return acc;
}

PotentialTuple min_over_window(const IspField& field, int x_lo, int x_hi, int y_lo, int y_hi) {
    x_lo = std::max(x_lo, 0);
    y_lo = std::max(y_lo, 0);
    x_hi = std::min(x_hi, field.width() - 1);
    y_hi = std::min(y_hi, field.height() - 1);
    if (x_lo > x_hi || y_lo > y_hi) {
        throw std::invalid_argument("min_over_window: window empty after clipping");
    }
    return kernels::window_min(field.cells(), field.width(), x_lo, x_hi, y_lo, y_hi);
}

namespace {

void append_extended(std::string& out, ExtendedReal v) {
    if (!v.is_finite()) {
        out += (v.value() > 0) ? "inf" : "-inf";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v.value());
    out += buf;
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw std::runtime_error("field parse: line " + std::to_string(line) + ": " + what);
}

ExtendedReal parse_extended(std::string_view token, int line) {
    if (token == "inf") return ExtendedReal::infinity();
    if (token == "-inf") return ExtendedReal::neg_infinity();
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || std::isnan(v)) {
        parse_fail(line, "bad number '" + std::string(token) + "'");
    }
    return ExtendedReal(v);
}

} // namespace

std::string dump_field(const IspField& field) {
    std::string out;
    out.reserve(static_cast<std::size_t>(field.width()) * field.height() * 12 + 16);
    out += std::to_string(field.width());
    out += ' ';
    out += std::to_string(field.height());
    out += '\n';
    for (int y = 0; y < field.height(); ++y) {
        for (int x = 0; x < field.width(); ++x) {
            if (x > 0) out += ' ';
            const PotentialTuple& cell = field.at(x, y);
            append_extended(out, cell.tau);
            out += ':';
            append_extended(out, cell.tau_dot);
        }
        out += '\n';
    }
    return out;
}

namespace {

// Splits off the next line; returns false at end of input.
bool next_line(std::string_view& rest, std::string_view& line) {
    if (rest.empty()) return false;
    const std::size_t pos = rest.find('\n');
    if (pos == std::string_view::npos) {
        line = rest;
        rest = {};
    } else {
        line = rest.substr(0, pos);
        rest = rest.substr(pos + 1);
    }
    return true;
}

} // namespace

IspField parse_field(std::string_view text) {
    std::string_view rest = text;
    std::string_view line;
    if (!next_line(rest, line)) parse_fail(1, "missing header");

    int width = 0;
    int height = 0;
    {
        const char* first = line.data();
        const char* last = line.data() + line.size();
        auto [p1, e1] = std::from_chars(first, last, width);
        if (e1 != std::errc{} || p1 == last || *p1 != ' ') parse_fail(1, "expected 'width height'");
        auto [p2, e2] = std::from_chars(p1 + 1, last, height);
        if (e2 != std::errc{} || p2 != last) parse_fail(1, "expected 'width height'");
        if (width < 1 || height < 1) parse_fail(1, "dimensions must be >= 1");
    }

    // A fresh field is all-background, the identity of min_by_tau, so writing
    // each parsed cell through a 1x1 roi stores it exactly.
    IspField field(width, height);
    for (int y = 0; y < height; ++y) {
        const int line_no = y + 2;
        if (!next_line(rest, line)) parse_fail(line_no, "unexpected end of input");
        std::size_t pos = 0;
        for (int x = 0; x < width; ++x) {
            if (pos >= line.size()) parse_fail(line_no, "too few entries");
            std::size_t end = line.find(' ', pos);
            if (end == std::string_view::npos) end = line.size();
            const std::string_view entry = line.substr(pos, end - pos);
            const std::size_t colon = entry.find(':');
            if (colon == std::string_view::npos) {
                parse_fail(line_no, "entry '" + std::string(entry) + "' lacks ':'");
            }
            const ExtendedReal tau = parse_extended(entry.substr(0, colon), line_no);
            const ExtendedReal tau_dot = parse_extended(entry.substr(colon + 1), line_no);
            if (tau < ExtendedReal(0.0)) parse_fail(line_no, "negative tau");
            field = write_roi(std::move(field), RegionOfInterest{x, y, x, y},
                              PotentialTuple(tau, tau_dot));
            pos = end + 1;
        }
        if (pos <= line.size()) {
            parse_fail(line_no, "too many entries");
        }
    }
    while (next_line(rest, line)) {
        if (!line.empty()) parse_fail(height + 2, "trailing content");
    }
    return field;
}

} // namespace ispnav
