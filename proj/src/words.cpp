#include "patdens/words.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace patdens {

namespace {

std::string render_variable(int var) {
  if (var < 26) return std::string(1, static_cast<char>('a' + var));
  if (var < 52) return std::string(1, static_cast<char>('A' + var - 26));
  return "<" + std::to_string(var) + ">";
}

}  // namespace

Pattern::Pattern(std::span<const int> symbols) {
  if (symbols.empty()) {
    throw std::invalid_argument("pattern must be nonempty");
  }
  std::unordered_map<int, int> rename;
  symbols_.reserve(symbols.size());
  for (int s : symbols) {
    if (s < 0) throw std::invalid_argument("pattern symbols must be nonnegative");
    auto [it, inserted] = rename.try_emplace(s, static_cast<int>(rename.size()));
    if (inserted) multiplicity_.push_back(0);
    ++multiplicity_[it->second];
    symbols_.push_back(it->second);
  }
}

Pattern::Pattern(std::initializer_list<int> symbols)
    : Pattern(std::span<const int>(symbols.begin(), symbols.size())) {}

Pattern Pattern::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("pattern text is empty");
  std::vector<int> ids;
  ids.reserve(text.size());
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (!((u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z'))) {
      throw std::invalid_argument("pattern may contain ASCII letters only, got '" +
                                  std::string(1, c) + "'");
    }
    ids.push_back(u);
  }
  return Pattern(std::span<const int>(ids));
}

int Pattern::min_multiplicity() const {
  return *std::min_element(multiplicity_.begin(), multiplicity_.end());
}

int Pattern::gcd_multiplicity() const {
  return std::accumulate(multiplicity_.begin(), multiplicity_.end(), 0,
                         [](int a, int b) { return std::gcd(a, b); });
}

std::string Pattern::str() const {
  std::string out;
  for (int s : symbols_) out += render_variable(s);
  return out;
}

Word::Word(std::vector<Letter> letters, int alphabet_size)
    : letters_(std::move(letters)), alphabet_size_(alphabet_size) {
  if (alphabet_size < 1 || alphabet_size > kMaxAlphabet) {
    throw std::invalid_argument("alphabet size must be in [1, 256]");
  }
  for (Letter c : letters_) {
    if (c >= alphabet_size) {
      throw std::invalid_argument("letter outside alphabet of size " +
                                  std::to_string(alphabet_size));
    }
  }
}

Word Word::parse(std::string_view text, int alphabet_size) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    if (c < 'a' || c > 'z') {
      throw std::invalid_argument("word may contain lowercase ASCII letters only, got '" +
                                  std::string(1, c) + "'");
    }
    letters.push_back(static_cast<Letter>(c - 'a'));
  }
  return Word(std::move(letters), alphabet_size);
}

Word Word::factor(std::size_t begin, std::size_t end) const {
  if (begin > end || end > letters_.size()) {
    throw std::out_of_range("factor bounds outside word");
  }
  Word out;
  out.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(begin),
                      letters_.begin() + static_cast<std::ptrdiff_t>(end));
  out.alphabet_size_ = alphabet_size_;
  return out;
}

std::string render_letter(int letter) {
  if (letter < 26) return std::string(1, static_cast<char>('a' + letter));
  return "<" + std::to_string(letter) + ">";
}

std::string Word::str() const {
  std::string out;
  out.reserve(letters_.size());
  for (Letter c : letters_) out += render_letter(c);
  return out;
}

LetterStats letter_stats(const Word& w) {
  std::vector<bool> seen(kMaxAlphabet, false);
  LetterStats s;
  s.length = w.size();
  for (Letter c : w.letters()) {
    if (!seen[c]) {
      seen[c] = true;
      ++s.distinct;
    }
  }
  s.repeats = s.length - s.distinct;
  return s;
}

LetterStats letter_stats(const Pattern& p) {
  LetterStats s;
  s.length = p.size();
  s.distinct = static_cast<std::size_t>(p.variable_count());
  s.repeats = s.length - s.distinct;
  return s;
}

bool is_doubled(const Pattern& p) { return p.min_multiplicity() >= 2; }

Pattern zimin(int n) {
  if (n < 1) throw std::invalid_argument("Zimin index must be at least 1");
  std::vector<int> z{0};
  for (int i = 1; i < n; ++i) {
    std::vector<int> next = z;
    next.push_back(i);
    next.insert(next.end(), z.begin(), z.end());
    z = std::move(next);
  }
  return Pattern(std::span<const int>(z));
}

bool is_anagram(const Pattern& lhs, const Pattern& rhs) {
  if (lhs.size() != rhs.size() || lhs.variable_count() != rhs.variable_count()) return false;
  std::vector<int> a(lhs.multiplicities().begin(), lhs.multiplicities().end());
  std::vector<int> b(rhs.multiplicities().begin(), rhs.multiplicities().end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace patdens
