#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace pf {

/// Reduced word in the free group on g_1..g_t extended by an involution c.
///
/// Letters: +i is g_i, -i is g_i^-1, 0 is c. Words are kept freely reduced
/// (x x^-1 and c c cancel).
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<int> letters);

  static GroupWord generator(int i) { return GroupWord({i}); }
  static GroupWord conjugation() { return GroupWord({0}); }

  const std::vector<int>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  /// Largest generator index used (0 for words in c alone).
  int max_generator() const noexcept;

  GroupWord inverse() const;
  friend GroupWord operator*(const GroupWord& a, const GroupWord& b);
  friend bool operator==(const GroupWord&, const GroupWord&) = default;
  /// Length-lexicographic order over the alphabet c < g1 < g1^-1 < g2 < ...
  friend bool operator<(const GroupWord& a, const GroupWord& b);

  /// "1" for the empty word, otherwise letters joined by '.', e.g. "g1.c.g2^-1".
  std::string to_string() const;
  static GroupWord parse(std::string_view text);

 private:
  std::vector<int> letters_;
};

struct GroupWordHash {
  std::size_t operator()(const GroupWord& w) const noexcept;
};

/// All reduced words of length <= max_length over t generators plus c,
/// in length-lexicographic order (the empty word first).
std::vector<GroupWord> enumerate_words(int generators, int max_length);

}  // namespace pf
