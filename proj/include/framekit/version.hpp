#pragma once

namespace framekit {

inline constexpr const char* version_string = "framekit 0.1.0";

} // namespace framekit
