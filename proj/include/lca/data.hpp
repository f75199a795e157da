#pragma once

#include <string_view>

namespace lca::data {

// Text of data/builtins.lca and data/catalog.lca, compiled in.
extern const std::string_view builtins_lca;
extern const std::string_view catalog_lca;

}  // namespace lca::data
