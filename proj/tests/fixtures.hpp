#ifndef D0L_TESTS_FIXTURES_HPP
#define D0L_TESTS_FIXTURES_HPP

#include <string>

#include "d0l/forky.hpp"
#include "d0l/sysfile.hpp"

namespace fixtures {

// Thue-Morse.
inline d0l::SystemSpec tm() {
  return d0l::parse_system("0 -> 01\n1 -> 10\naxiom 0\n");
}

// Chacon: non-primitive, one bounded letter, circular.
inline d0l::SystemSpec chacon() {
  return d0l::parse_system("0 -> 0010\n1 -> 1\naxiom 0\n");
}

// Three-letter system, prefix- and suffix-free.
inline d0l::SystemSpec sys_e() {
  return d0l::parse_system("0 -> 012\n1 -> 112\n2 -> 102\naxiom 0\n");
}

// Three-letter system, prefix-free but not suffix-free; left side needs
// longer prolongations.
inline d0l::SystemSpec sys_s() {
  return d0l::parse_system("0 -> 0012\n1 -> 2\n2 -> 012\naxiom 0\n");
}

// Five-letter system with several periodic points.
inline d0l::SystemSpec sys_p() {
  return d0l::parse_system(
      "1 -> 1211\n2 -> 311\n3 -> 2412\n4 -> 435\n5 -> 534\naxiom 1\n");
}

// Pushy (bounded 1s pump up next to the growing 0s).
inline d0l::SystemSpec pushy_001_1() {
  return d0l::parse_system("0 -> 001\n1 -> 1\naxiom 0\n");
}

// Non-pushy but repetitive (1^n for all n).
inline d0l::SystemSpec rep_001_11() {
  return d0l::parse_system("0 -> 001\n1 -> 11\naxiom 0\n");
}

// Eventually periodic fixed point 0111...
inline d0l::SystemSpec rep_01_11() {
  return d0l::parse_system("0 -> 01\n1 -> 11\naxiom 0\n");
}

// Same rules seeded at 1: the fixed point is the periodic word 111...
inline d0l::SystemSpec periodic_ones() {
  return d0l::parse_system("0 -> 01\n1 -> 11\naxiom 1\n");
}

// Aperiodic but repetitive three-letter system.
inline d0l::SystemSpec rep_010_22_11() {
  return d0l::parse_system("0 -> 010\n1 -> 22\n2 -> 11\naxiom 0\n");
}

// Carries a factor whose triplet has a synchronizing cut even though the
// bare factor has none.
inline d0l::SystemSpec sys_v() {
  return d0l::parse_system("0 -> 010\n1 -> 210\n2 -> 220\naxiom 0\n");
}

inline d0l::Word w(const d0l::SystemSpec& spec, const std::string& text) {
  return spec.symbols.parse_word(text);
}

inline d0l::PPair pp(const d0l::SystemSpec& spec, const std::string& a, const std::string& b) {
  return d0l::PPair(w(spec, a), w(spec, b));
}

}  // namespace fixtures

#endif  // D0L_TESTS_FIXTURES_HPP
