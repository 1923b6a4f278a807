#pragma once

namespace wp {

inline constexpr const char* kCheckerVersion = "wp 1.0.0";
// Version of the request/response schema in protocol.md.
inline constexpr const char* kProtocolVersion = "1";

}  // namespace wp
