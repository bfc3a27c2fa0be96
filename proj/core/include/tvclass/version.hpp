#pragma once

namespace tvclass {

inline constexpr int version_major = 0;
inline constexpr int version_minor = 1;
inline constexpr int version_patch = 0;
inline constexpr const char* version_string = "0.1.0";

/// Version tag written into serialized artifacts; loaders reject files whose
/// format_version they do not understand.
inline constexpr int artifact_format_version = 1;

} // namespace tvclass
