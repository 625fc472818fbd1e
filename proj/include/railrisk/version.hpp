#pragma once

#include <string_view>

namespace railrisk {

// Version of the tool itself, recorded in every JSON output.
inline constexpr std::string_view kToolVersion = "0.1.0";

// Version of the model file layout. Loaders reject any other value.
inline constexpr int kModelSchemaVersion = 1;

}  // namespace railrisk
