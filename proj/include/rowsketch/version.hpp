#pragma once

namespace rowsketch {

inline constexpr const char* kLibraryName = "rowsketch";
inline constexpr const char* kLibraryVersion = "0.1.0";

}  // namespace rowsketch
