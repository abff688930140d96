#pragma once

namespace speclab {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "speclab-report/1";

}  // namespace speclab
