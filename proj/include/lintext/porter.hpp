#pragma once

#include <string>
#include <string_view>

namespace lintext {

/// Porter (1980) suffix-stripping stemmer, steps 1a through 5b.
///
/// Input is expected to be lowercase ASCII letters. Words of length <= 2 are
/// returned unchanged, as in the reference implementation.
std::string porter_stem(std::string_view word);

}  // namespace lintext
