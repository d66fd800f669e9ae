#pragma once

namespace pocdma {

inline constexpr const char* kVersion = "1.0.0";

// Version of the CSV/JSON column layout emitted by the CLI. Bumped whenever
// a column is added, removed or reordered.
inline constexpr int kOutputSchemaVersion = 1;

}  // namespace pocdma
