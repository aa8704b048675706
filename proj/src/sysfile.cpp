#include "d0l/sysfile.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace d0l {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& message) {
  throw InputError("line " + std::to_string(line) + ": " + message);
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace

SymbolTable::SymbolTable(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw InputError("symbol table must not be empty");
  if (names_.size() > kMaxAlphabet) throw InputError("too many symbols (maximum 64)");
  for (const std::string& n : names_) {
    if (n.size() != 1) single_char_ = false;
  }
}

std::optional<Letter> SymbolTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<Letter>(i);
  }
  return std::nullopt;
}

std::string SymbolTable::render(WordView w) const {
  if (w.empty()) return "";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single_char_ && i > 0) out += ' ';
    out += name(w[i]);
  }
  return out;
}

std::string SymbolTable::render_pair(const Word& a, const Word& b) const {
  return "(" + render(a) + "," + render(b) + ")";
}

Word SymbolTable::parse_word(std::string_view text) const {
  Word out;
  if (single_char_) {
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      auto l = find(std::string_view(&c, 1));
      if (!l) throw InputError(std::string("unknown symbol '") + c + "'");
      out.push_back(*l);
    }
    return out;
  }
  for (const std::string& tok : tokenize(text)) {
    auto l = find(tok);
    if (!l) throw InputError("unknown symbol '" + tok + "'");
    out.push_back(*l);
  }
  return out;
}

SystemSpec parse_system(std::string_view text) {
  struct RawRule {
    std::string lhs;
    std::vector<std::string> rhs;  // tokens (single-char mode splits later)
    int line;
  };
  std::vector<std::string> declared;
  bool declared_mode = false;
  std::vector<RawRule> rules;
  std::optional<std::pair<std::vector<std::string>, int>> axiom;
  RunLimits limits;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
    std::vector<std::string> tokens = tokenize(raw);
    if (tokens.empty()) continue;

    if (tokens[0] == "symbols") {
      if (!rules.empty()) parse_fail(lineno, "symbols must be declared before any rule");
      if (tokens.size() < 2) parse_fail(lineno, "symbols line needs at least one name");
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (std::find(declared.begin(), declared.end(), tokens[i]) != declared.end()) {
          parse_fail(lineno, "symbol '" + tokens[i] + "' declared twice");
        }
        declared.push_back(tokens[i]);
      }
      declared_mode = true;
      continue;
    }
    if (tokens[0] == "axiom") {
      if (axiom) parse_fail(lineno, "axiom declared twice");
      if (tokens.size() < 2) parse_fail(lineno, "axiom must be nonempty");
      axiom = {{tokens.begin() + 1, tokens.end()}, lineno};
      continue;
    }
    auto numeric_limit = [&](const char* key, auto& slot) {
      if (tokens[0] != key) return false;
      if (tokens.size() != 2) parse_fail(lineno, std::string(key) + " needs one number");
      try {
        slot = std::stoull(tokens[1]);
      } catch (...) {
        parse_fail(lineno, std::string("bad number for ") + key);
      }
      return true;
    };
    if (numeric_limit("horizon", limits.horizon) || numeric_limit("max-len", limits.max_len) ||
        numeric_limit("delay-cap", limits.delay_cap) ||
        numeric_limit("verify-len", limits.verify_len)) {
      continue;
    }
    if (tokens[0] == "power-threshold") {
      if (tokens.size() != 2) parse_fail(lineno, "power-threshold needs one number");
      try {
        limits.power_threshold = std::stoll(tokens[1]);
      } catch (...) {
        parse_fail(lineno, "bad number for power-threshold");
      }
      continue;
    }

    // Rule: LHS -> RHS...
    if (tokens.size() < 2 || tokens[1] != "->") {
      parse_fail(lineno, "expected 'SYMBOL -> IMAGE', 'axiom ...', or a limit setting");
    }
    if (tokens.size() == 2) parse_fail(lineno, "erasing image: rule for '" + tokens[0] +
                                                   "' has an empty right side");
    rules.push_back({tokens[0], {tokens.begin() + 2, tokens.end()}, lineno});
  }

  if (rules.empty()) throw InputError("no rules found");
  if (!axiom) throw InputError("missing axiom line");

  // Build the symbol list: declared order, or sorted single characters.
  std::vector<std::string> names;
  if (declared_mode) {
    names = declared;
  } else {
    std::map<char, bool> chars;
    auto collect = [&](const std::string& tok, int line) {
      for (char c : tok) chars[c] = true;
      (void)line;
    };
    for (const RawRule& r : rules) {
      if (r.lhs.size() != 1) {
        parse_fail(r.line, "multi-character symbol '" + r.lhs +
                               "' needs a preceding symbols declaration");
      }
      collect(r.lhs, r.line);
      for (const std::string& tok : r.rhs) collect(tok, r.line);
    }
    for (const std::string& tok : axiom->first) collect(tok, axiom->second);
    for (auto [c, _] : chars) names.emplace_back(1, c);
  }
  SymbolTable table(std::move(names));

  auto lookup = [&](const std::string& name, int line) {
    auto l = table.find(name);
    if (!l) parse_fail(line, "undeclared symbol '" + name + "'");
    return *l;
  };
  auto tokens_to_word = [&](const std::vector<std::string>& tokens, int line) {
    Word w;
    for (const std::string& tok : tokens) {
      if (declared_mode) {
        w.push_back(lookup(tok, line));
      } else {
        for (char c : tok) w.push_back(lookup(std::string(1, c), line));
      }
    }
    return w;
  };

  std::vector<Word> images(table.size());
  std::vector<bool> have(table.size(), false);
  for (const RawRule& r : rules) {
    Letter lhs = lookup(r.lhs, r.line);
    auto idx = static_cast<unsigned char>(lhs);
    if (have[idx]) parse_fail(r.line, "duplicate rule for symbol '" + r.lhs + "'");
    have[idx] = true;
    images[idx] = tokens_to_word(r.rhs, r.line);
    if (images[idx].empty()) parse_fail(r.line, "erasing image for symbol '" + r.lhs + "'");
  }
  for (int i = 0; i < table.size(); ++i) {
    if (!have[i]) {
      throw InputError("no rule for symbol '" + table.name(static_cast<Letter>(i)) + "'");
    }
  }
  Word ax = tokens_to_word(axiom->first, axiom->second);
  if (ax.empty()) parse_fail(axiom->second, "axiom must be nonempty");

  return SystemSpec{std::move(table), D0LSystem(Morphism(std::move(images)), std::move(ax)),
                    limits};
}

SystemSpec parse_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open system file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

}  // namespace d0l
