#pragma once

#include <cstdint>
#include <string>

namespace numgram {

/// Lowercase space-separated English number words ("fifty one"), used when a
/// puzzle reveals its values as words instead of digit glyphs. Supports
/// 0..999999.
std::string englishNumber(std::int64_t n);

}  // namespace numgram
