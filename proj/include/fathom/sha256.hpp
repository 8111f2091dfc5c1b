// sha256.hpp -- content hashing for the replay fixture store.
#pragma once

#include <string>
#include <string_view>

namespace fathom {

std::string sha256_hex(std::string_view data);

}  // namespace fathom
