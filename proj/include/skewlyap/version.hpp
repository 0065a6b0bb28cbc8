#pragma once

namespace skewlyap {

inline constexpr const char* version = "0.1.0";
inline constexpr int report_schema = 1;

} // namespace skewlyap
