#pragma once

#include <cstdio>
#include <string>

namespace proflik {

// Shortest-round-trip-adjacent fixed formatting for CSV output: %.17g is
// enough digits to reproduce any double exactly, keeping artifacts
// byte-comparable across runs.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace proflik
