#include "patdens/matcher.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <stdexcept>

#include "patdens/window_counting.hpp"

namespace patdens {

Word Homomorphism::apply(const Pattern& p) const {
  std::vector<Letter> out;
  int q = 1;
  for (int v : p.symbols()) {
    const Word& img = images.at(static_cast<std::size_t>(v));
    out.insert(out.end(), img.letters().begin(), img.letters().end());
    q = std::max(q, img.alphabet_size());
  }
  return Word(std::move(out), q);
}

std::vector<int> Homomorphism::image_lengths() const {
  std::vector<int> lengths;
  lengths.reserve(images.size());
  for (const Word& w : images) lengths.push_back(static_cast<int>(w.size()));
  return lengths;
}

void PrefixIndex::reset(std::span<const Letter> text) {
  text_ = text;
  const std::size_t n = text.size();
  z_.assign(n, 0);
  pi_.assign(n, 0);
  if (n == 0) return;

  z_[0] = static_cast<int>(n);
  for (std::size_t i = 1, l = 0, r = 0; i < n; ++i) {
    std::size_t zi = 0;
    if (i < r) zi = std::min(r - i, static_cast<std::size_t>(z_[i - l]));
    while (i + zi < n && text[zi] == text[i + zi]) ++zi;
    if (i + zi > r) {
      l = i;
      r = i + zi;
    }
    z_[i] = static_cast<int>(zi);
  }

  for (std::size_t i = 1; i < n; ++i) {
    int b = pi_[i - 1];
    while (b > 0 && text[i] != text[static_cast<std::size_t>(b)]) b = pi_[static_cast<std::size_t>(b) - 1];
    if (text[i] == text[static_cast<std::size_t>(b)]) ++b;
    pi_[i] = b;
  }
}

WindowMatcher::WindowMatcher(const Pattern& p) : pattern_(p), k_(p.variable_count()) {
  const auto mult = p.multiplicities();
  tail_min_.assign(static_cast<std::size_t>(k_) + 1, 0);
  tail_gcd_.assign(static_cast<std::size_t>(k_) + 1, 0);
  for (int j = k_ - 1; j >= 0; --j) {
    tail_min_[j] = tail_min_[j + 1] + static_cast<std::size_t>(mult[j]);
    tail_gcd_[j] = std::gcd(tail_gcd_[j + 1], mult[j]);
  }
  ends_with_first_ = p.size() > 1 && p.symbols().back() == 0;
  length_.assign(static_cast<std::size_t>(k_), 0);
  start_.assign(static_cast<std::size_t>(k_), 0);
}

template <class Visit>
bool WindowMatcher::search(std::size_t i, std::size_t pos, std::size_t fixed_tail, Visit& visit) {
  const auto symbols = pattern_.symbols();
  if (i == symbols.size()) {
    return pos == len_ ? visit(std::span<const int>(length_)) : true;
  }
  const int v = symbols[i];
  const auto text = index_->text();

  if (length_[v] > 0) {
    const auto l = static_cast<std::size_t>(length_[v]);
    if (pos + l > len_) return true;
    if (v == 0) {
      if (static_cast<std::size_t>(index_->z(pos)) < l) return true;
    } else if (std::memcmp(text.data() + pos, text.data() + start_[v], l) != 0) {
      return true;
    }
    return search(i + 1, pos + l, fixed_tail - l, visit);
  }

  // First occurrence of v; every later occurrence lies ahead of i.
  const std::size_t remaining = len_ - pos;
  if (remaining < fixed_tail) return true;
  const std::size_t free = remaining - fixed_tail;
  const auto r = static_cast<std::size_t>(pattern_.multiplicity(v));
  const std::size_t others = tail_min_[v + 1];
  const auto g = static_cast<std::size_t>(tail_gcd_[v + 1]);
  if (free < r + others) return true;

  auto try_length = [&](std::size_t l) {
    length_[v] = static_cast<int>(l);
    start_[v] = pos;
    const bool go_on = search(i + 1, pos + l, fixed_tail + l * (r - 1), visit);
    length_[v] = 0;
    return go_on;
  };
  auto admissible = [&](std::size_t l) { return g == 0 || (free - r * l) % g == 0; };

  if (v == k_ - 1) {
    if (free % r != 0) return true;
    const std::size_t l = free / r;
    if (v == 0 && ends_with_first_ && static_cast<std::size_t>(index_->z(len_ - l)) < l) {
      return true;
    }
    return try_length(l);
  }

  const std::size_t max_len = (free - others) / r;
  if (v == 0 && ends_with_first_) {
    // The image of the first variable is a border of the window.
    const std::size_t base = borders_.size();
    for (int b = index_->border(len_); b > 0; b = index_->border(static_cast<std::size_t>(b))) {
      if (static_cast<std::size_t>(b) <= max_len) borders_.push_back(b);
    }
    const std::size_t top = borders_.size();
    for (std::size_t j = top; j > base; --j) {
      const auto l = static_cast<std::size_t>(borders_[j - 1]);
      if (admissible(l) && !try_length(l)) {
        borders_.resize(base);
        return false;
      }
    }
    borders_.resize(base);
    return true;
  }
  for (std::size_t l = 1; l <= max_len; ++l) {
    if (admissible(l) && !try_length(l)) return false;
  }
  return true;
}

bool WindowMatcher::matches(const PrefixIndex& index, std::size_t len) {
  bool found = false;
  auto visit = [&](std::span<const int>) {
    found = true;
    return false;
  };
  index_ = &index;
  len_ = len;
  if (len >= pattern_.size() && len <= index.size()) search(0, 0, 0, visit);
  return found;
}

std::optional<std::vector<int>> WindowMatcher::first_witness(const PrefixIndex& index,
                                                             std::size_t len) {
  std::optional<std::vector<int>> out;
  auto visit = [&](std::span<const int> lengths) {
    out.emplace(lengths.begin(), lengths.end());
    return false;
  };
  index_ = &index;
  len_ = len;
  if (len >= pattern_.size() && len <= index.size()) search(0, 0, 0, visit);
  return out;
}

std::uint64_t WindowMatcher::count_witnesses(const PrefixIndex& index, std::size_t len) {
  std::uint64_t count = 0;
  auto visit = [&](std::span<const int>) {
    ++count;
    return true;
  };
  index_ = &index;
  len_ = len;
  if (len >= pattern_.size() && len <= index.size()) search(0, 0, 0, visit);
  return count;
}

void WindowMatcher::for_each_witness(const PrefixIndex& index, std::size_t len,
                                     const std::function<bool(std::span<const int>)>& visit) {
  auto forward = [&](std::span<const int> lengths) { return visit(lengths); };
  index_ = &index;
  len_ = len;
  if (len >= pattern_.size() && len <= index.size()) search(0, 0, 0, forward);
}

Homomorphism homomorphism_from_lengths(const Pattern& p, const Word& window,
                                       std::span<const int> lengths) {
  Homomorphism phi;
  phi.images.resize(static_cast<std::size_t>(p.variable_count()));
  std::vector<bool> done(phi.images.size(), false);
  std::size_t pos = 0;
  for (int v : p.symbols()) {
    const auto l = static_cast<std::size_t>(lengths[v]);
    if (!done[v]) {
      phi.images[v] = window.factor(pos, pos + l);
      done[v] = true;
    }
    pos += l;
  }
  return phi;
}

namespace {

void require_nonempty(const Word& w) {
  if (w.empty()) throw std::invalid_argument("word must be nonempty");
}

}  // namespace

bool is_instance(const Word& w, const Pattern& p) {
  require_nonempty(w);
  PrefixIndex index(w.letters());
  WindowMatcher matcher(p);
  return matcher.matches(index, w.size());
}

std::optional<Homomorphism> find_witness(const Word& w, const Pattern& p) {
  require_nonempty(w);
  PrefixIndex index(w.letters());
  WindowMatcher matcher(p);
  auto lengths = matcher.first_witness(index, w.size());
  if (!lengths) return std::nullopt;
  return homomorphism_from_lengths(p, w, *lengths);
}

std::uint64_t count_encounters(const Pattern& p, const Word& w) {
  require_nonempty(w);
  const auto letters = w.letters();
  WindowMatcher matcher(p);
  PrefixIndex index;
  std::uint64_t total = 0;
  for (std::size_t a = 0; a < letters.size(); ++a) {
    index.reset(letters.subspan(a));
    for (std::size_t len = p.size(); a + len <= letters.size(); ++len) {
      total += matcher.count_witnesses(index, len);
    }
  }
  return total;
}

DensityValue density(const Pattern& p, const Word& w) {
  require_nonempty(w);
  DensityValue d;
  d.numerator = count_instance_windows(p, w.letters());
  d.denominator = static_cast<std::uint64_t>(w.size()) * (w.size() + 1) / 2;
  d.value = make_rational(d.numerator, d.denominator);
  return d;
}

std::vector<Encounter> enumerate_encounters(const Pattern& p, const Word& w, std::size_t guard) {
  require_nonempty(w);
  if (w.size() > guard) {
    throw std::length_error("word length " + std::to_string(w.size()) +
                            " exceeds the enumeration guard " + std::to_string(guard));
  }
  const auto letters = w.letters();
  WindowMatcher matcher(p);
  PrefixIndex index;
  std::vector<Encounter> out;
  for (std::size_t a = 0; a < letters.size(); ++a) {
    index.reset(letters.subspan(a));
    for (std::size_t len = p.size(); a + len <= letters.size(); ++len) {
      const Word window = w.factor(a, a + len);
      matcher.for_each_witness(index, len, [&](std::span<const int> lengths) {
        out.push_back(Encounter{a, a + len, homomorphism_from_lengths(p, window, lengths)});
        return true;
      });
    }
  }
  return out;
}

std::string render_witness(const Homomorphism& phi, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t v = 0; v < phi.images.size(); ++v) {
    if (v > 0) out += ", ";
    out += (v < names.size() ? names[v] : std::to_string(v));
    out += "→";
    out += phi.images[v].str();
  }
  return out;
}

}  // namespace patdens
