#include "pfam/group_word.hpp"

#include <algorithm>
#include <charconv>

#include "pfam/errors.hpp"

namespace pf {

namespace {

// Position of a letter in the alphabet c, g1, g1^-1, g2, g2^-1, ...
int rank(int letter) {
  if (letter == 0) return 0;
  return letter > 0 ? 2 * letter - 1 : -2 * letter;
}

bool cancels(int a, int b) { return a == -b; }

void push_reduced(std::vector<int>& out, int letter) {
  if (!out.empty() && cancels(out.back(), letter)) {
    out.pop_back();
  } else {
    out.push_back(letter);
  }
}

}  // namespace

GroupWord::GroupWord(std::vector<int> letters) {
  letters_.reserve(letters.size());
  for (int x : letters) push_reduced(letters_, x);
}

int GroupWord::max_generator() const noexcept {
  int m = 0;
  for (int x : letters_) m = std::max(m, x < 0 ? -x : x);
  return m;
}

GroupWord GroupWord::inverse() const {
  GroupWord w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
  return w;
}

GroupWord operator*(const GroupWord& a, const GroupWord& b) {
  GroupWord w = a;
  for (int x : b.letters_) push_reduced(w.letters_, x);
  return w;
}

bool operator<(const GroupWord& a, const GroupWord& b) {
  if (a.letters_.size() != b.letters_.size()) return a.letters_.size() < b.letters_.size();
  for (std::size_t i = 0; i < a.letters_.size(); ++i) {
    const int ra = rank(a.letters_[i]), rb = rank(b.letters_[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

std::string GroupWord::to_string() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i > 0) out += '.';
    const int x = letters_[i];
    if (x == 0) {
      out += 'c';
    } else {
      out += 'g' + std::to_string(x < 0 ? -x : x);
      if (x < 0) out += "^-1";
    }
  }
  return out;
}

GroupWord GroupWord::parse(std::string_view text) {
  if (text == "1") return {};
  std::vector<int> letters;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t dot = std::min(text.find('.', pos), text.size());
    std::string_view tok = text.substr(pos, dot - pos);
    if (tok == "c") {
      letters.push_back(0);
    } else {
      bool inv = false;
      if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
        inv = true;
        tok.remove_suffix(3);
      }
      int idx = 0;
      if (tok.size() < 2 || tok[0] != 'g' ||
          std::from_chars(tok.data() + 1, tok.data() + tok.size(), idx).ptr != tok.data() + tok.size() ||
          idx < 1) {
        throw Error(ErrorCode::ParseError, "bad word letter '" + std::string(tok) + "'");
      }
      letters.push_back(inv ? -idx : idx);
    }
    pos = dot + 1;
  }
  return GroupWord(std::move(letters));
}

std::size_t GroupWordHash::operator()(const GroupWord& w) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (int x : w.letters()) {
    h ^= static_cast<std::size_t>(x + 64);
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<GroupWord> enumerate_words(int generators, int max_length) {
  if (generators < 0 || max_length < 0) throw Error(ErrorCode::InvalidArgument, "negative bound");
  std::vector<int> alphabet{0};
  for (int i = 1; i <= generators; ++i) {
    alphabet.push_back(i);
    alphabet.push_back(-i);
  }
  std::vector<GroupWord> out{GroupWord{}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t w = begin; w < end; ++w) {
      for (int x : alphabet) {
        const auto& base = out[w].letters();
        if (!base.empty() && cancels(base.back(), x)) continue;
        std::vector<int> letters = base;
        letters.push_back(x);
        out.emplace_back(std::move(letters));
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace pf
