#include "numgram/english.hpp"

#include "numgram/error.hpp"

namespace numgram {

namespace {

const char* kOnes[] = {"zero", "one", "two",   "three", "four",    "five",    "six",
                       "seven", "eight", "nine", "ten",  "eleven",  "twelve",  "thirteen",
                       "fourteen", "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};
const char* kTens[] = {"", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy",
                       "eighty", "ninety"};

std::string below1000(std::int64_t n) {
  std::string out;
  if (n >= 100) {
    out = std::string(kOnes[n / 100]) + " hundred";
    n %= 100;
    if (n) out += ' ';
  }
  if (n >= 20) {
    out += kTens[n / 10];
    if (n % 10) out += std::string(" ") + kOnes[n % 10];
  } else if (n > 0 || out.empty()) {
    out += kOnes[n];
  }
  return out;
}

}  // namespace

std::string englishNumber(std::int64_t n) {
  if (n < 0 || n > 999999) raise(Errc::OutOfRange, "english rendering supports 0..999999");
  if (n == 0) return "zero";
  std::string out;
  if (n >= 1000) {
    out = below1000(n / 1000) + " thousand";
    n %= 1000;
    if (n) out += ' ';
  }
  if (n) out += below1000(n);
  return out;
}

}  // namespace numgram
