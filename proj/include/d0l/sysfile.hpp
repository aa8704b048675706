#ifndef D0L_SYSFILE_HPP
#define D0L_SYSFILE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "d0l/core.hpp"

namespace d0l {

// External symbol names <-> dense letter ids. Words render as plain
// concatenation when every symbol is a single character, space-separated
// otherwise.
class SymbolTable {
 public:
  explicit SymbolTable(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(Letter a) const { return names_[static_cast<unsigned char>(a)]; }
  std::optional<Letter> find(std::string_view name) const;

  std::string render(WordView w) const;
  std::string render_pair(const Word& a, const Word& b) const;
  // Inverse of render for tests and round-trips.
  Word parse_word(std::string_view text) const;

  bool single_char() const { return single_char_; }

 private:
  std::vector<std::string> names_;
  bool single_char_ = true;
};

// Optional limits stated in the system file; command line and environment
// values override them.
struct RunLimits {
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> max_len;
  std::optional<std::size_t> delay_cap;
  std::optional<long long> power_threshold;
  std::optional<std::size_t> verify_len;
};

struct SystemSpec {
  SymbolTable symbols;
  D0LSystem system;
  RunLimits limits;
};

// Grammar, one declaration per line ('#' starts a comment):
//   symbols a b c        optional; enables multi-character symbol names
//   X -> IMAGE           one rule per symbol; IMAGE is a concatenation of
//                        single characters, or whitespace-separated names
//                        when a symbols line is present
//   axiom WORD
//   horizon N | max-len N | delay-cap N | power-threshold N | verify-len N
// Errors (duplicate rule, unknown symbol, empty image, missing axiom) carry
// line numbers.
SystemSpec parse_system(std::string_view text);

SystemSpec parse_system_file(const std::string& path);

}  // namespace d0l

#endif  // D0L_SYSFILE_HPP
