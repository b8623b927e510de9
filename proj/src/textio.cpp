#include "nanocob/textio.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace nanocob {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

struct Token {
  std::string text;
  std::size_t column = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& s, std::size_t offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    if (i >= s.size()) break;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    out.push_back({s.substr(start, i - start), offset + start + 1});
  }
  return out;
}

// A single token without spaces is read one character per letter.
// "()" is the empty word.
std::vector<Token> letter_tokens(const std::vector<Token>& toks) {
  if (toks.size() == 1 && toks[0].text == "()") return {};
  if (toks.size() != 1 || toks[0].text.size() <= 1) return toks;
  std::vector<Token> out;
  for (std::size_t i = 0; i < toks[0].text.size(); ++i) out.push_back({std::string(1, toks[0].text[i]), toks[0].column + i});
  return out;
}

struct Pending {
  bool phrase = false;
  std::size_t line = 0;
  std::vector<std::vector<Token>> words;
  bool has_proj = false;
  std::vector<std::pair<std::string, std::string>> proj;
};

class Parser {
 public:
  Parser(bool strict, AlphabetPtr fixed) : strict_(strict), alphabet_(std::move(fixed)), fixed_(alphabet_ != nullptr) {}

  ParsedInput run(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
      ++lineno;
      std::string line = raw;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      const auto colon = line.find(':');
      if (colon == std::string::npos) throw ParseError(lineno, first + 1, "expected 'keyword: ...'");
      std::string key = line.substr(first, colon - first);
      while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
      const auto toks = tokenize(line.substr(colon + 1), colon + 1);
      if (key == "alphabet") {
        alphabet_line(lineno, first + 1, toks);
      } else if (key == "tau") {
        tau_line(lineno, first + 1, toks);
      } else if (key == "word" || key == "phrase") {
        flush();
        need_alphabet(lineno, first + 1);
        start_item(lineno, key == "phrase", toks, colon + 2);
      } else if (key == "proj") {
        proj_line(lineno, first + 1, toks);
      } else {
        throw ParseError(lineno, first + 1, "unknown keyword '" + key + "'");
      }
    }
    flush();
    if (!alphabet_ && !symbols_.empty()) need_alphabet(lineno + 1, 1);
    out_.alphabet = alphabet_;
    return std::move(out_);
  }

 private:
  void alphabet_line(std::size_t line, std::size_t col, const std::vector<Token>& toks) {
    if (fixed_) throw ParseError(line, col, "alphabet is already given");
    if (!symbols_.empty()) throw ParseError(line, col, "alphabet declared twice");
    if (toks.empty()) throw ParseError(line, col, "empty alphabet");
    std::set<std::string> seen;
    for (const auto& t : toks) {
      if (!seen.insert(t.text).second) throw ParseError(line, t.column, "duplicate symbol '" + t.text + "'");
      symbols_.push_back(t.text);
    }
    alphabet_line_ = line;
  }

  void tau_line(std::size_t line, std::size_t col, const std::vector<Token>& toks) {
    if (fixed_) throw ParseError(line, col, "alphabet is already given");
    if (symbols_.empty()) throw ParseError(line, col, "tau before alphabet");
    if (alphabet_) throw ParseError(line, col, "tau declared twice");
    std::map<std::string, std::string> partner;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& t : toks) {
      const auto arrow = t.text.find("<->");
      if (arrow == std::string::npos) throw ParseError(line, t.column, "expected x<->y");
      const std::string x = t.text.substr(0, arrow);
      const std::string y = t.text.substr(arrow + 3);
      for (const auto& s : {x, y}) {
        if (std::find(symbols_.begin(), symbols_.end(), s) == symbols_.end()) {
          throw ParseError(line, t.column, "unknown symbol '" + s + "' in tau");
        }
      }
      auto px = partner.find(x);
      auto py = partner.find(y);
      const bool repeat = px != partner.end() && px->second == y;
      if (repeat) {
        if (strict_) throw ParseError(line, t.column, "pair " + x + "<->" + y + " declared twice");
        continue;
      }
      if (px != partner.end() || py != partner.end()) {
        const std::string& bad = px != partner.end() ? x : y;
        throw ParseError(line, t.column, "tau is not an involution: '" + bad + "' paired twice");
      }
      partner[x] = y;
      partner[y] = x;
      pairs.emplace_back(x, y);
    }
    for (const auto& s : symbols_) {
      if (!partner.count(s)) throw ParseError(line, col, "symbol '" + s + "' missing from tau");
    }
    try {
      alphabet_ = make_alphabet(InvolutiveAlphabet::from_pairs(symbols_, pairs, strict_));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, col, e.what());
    }
  }

  void need_alphabet(std::size_t line, std::size_t col) {
    if (alphabet_) return;
    if (symbols_.empty()) throw ParseError(line, col, "word before alphabet");
    throw ParseError(line, col, "alphabet on line " + std::to_string(alphabet_line_) + " has no tau line");
  }

  void start_item(std::size_t line, bool phrase, const std::vector<Token>& toks, std::size_t col) {
    pending_ = Pending{};
    pending_.phrase = phrase;
    pending_.line = line;
    active_ = true;
    if (!phrase) {
      pending_.words.push_back(letter_tokens(toks));
    } else {
      std::vector<Token> cur;
      for (const auto& t : toks) {
        if (t.text == "|") {
          pending_.words.push_back(letter_tokens(cur));
          cur.clear();
        } else {
          cur.push_back(t);
        }
      }
      pending_.words.push_back(letter_tokens(cur));
    }
    // Occurrence counts, reported in order of first appearance.
    std::vector<std::string> order;
    std::map<std::string, int> count;
    for (const auto& w : pending_.words) {
      for (const auto& t : w) {
        if (count[t.text]++ == 0) order.push_back(t.text);
      }
    }
    for (const auto& n : order) {
      if (count[n] != 2) {
        std::string msg;
        for (const auto& m : order) {
          if (!msg.empty()) msg += ", ";
          msg += m + " occurs " + std::to_string(count[m]) + (count[m] == 1 ? "" : " times");
        }
        throw ParseError(line, col, "letter " + msg);
      }
    }
    letters_ = order;
  }

  void proj_line(std::size_t line, std::size_t col, const std::vector<Token>& toks) {
    if (!active_) throw ParseError(line, col, "proj without a preceding word or phrase");
    if (pending_.has_proj) throw ParseError(line, col, "second proj line for the same word");
    std::set<std::string> seen;
    for (const auto& t : toks) {
      const auto eq = t.text.find('=');
      if (eq == std::string::npos) throw ParseError(line, t.column, "expected LETTER=symbol");
      const std::string letter = t.text.substr(0, eq);
      const std::string sym = t.text.substr(eq + 1);
      if (std::find(letters_.begin(), letters_.end(), letter) == letters_.end()) {
        throw ParseError(line, t.column, "letter '" + letter + "' is not in the word");
      }
      if (!alphabet_->contains(sym)) throw ParseError(line, t.column + eq + 1, "unknown symbol '" + sym + "'");
      if (!seen.insert(letter).second) throw ParseError(line, t.column, "letter '" + letter + "' projected twice");
      pending_.proj.emplace_back(letter, sym);
    }
    for (const auto& l : letters_) {
      if (!seen.count(l)) throw ParseError(line, col, "projection missing for letter " + l);
    }
    pending_.has_proj = true;
  }

  void flush() {
    if (!active_) return;
    active_ = false;
    if (!pending_.has_proj && !letters_.empty()) {
      throw ParseError(pending_.line, 1, "projection missing: no proj line after this " +
                                             std::string(pending_.phrase ? "phrase" : "word"));
    }
    auto join = [](const std::vector<Token>& w) {
      std::string s;
      for (const auto& t : w) s += (s.empty() ? "" : " ") + t.text;
      return s;
    };
    try {
      if (pending_.phrase) {
        std::string text;
        for (std::size_t r = 0; r < pending_.words.size(); ++r) text += (r ? " | " : "") + join(pending_.words[r]);
        out_.phrases.push_back(make_phrase(alphabet_, text, pending_.proj));
      } else {
        // Joined with spaces, so multi-character names stay intact.
        out_.words.push_back(make_word(alphabet_, join(pending_.words[0]), pending_.proj));
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(pending_.line, 1, e.what());
    }
  }

  bool strict_;
  AlphabetPtr alphabet_;
  bool fixed_;
  std::vector<std::string> symbols_;
  std::size_t alphabet_line_ = 0;
  bool active_ = false;
  Pending pending_;
  std::vector<std::string> letters_;
  ParsedInput out_;
};

}  // namespace

ParsedInput parse_input(const std::string& text, bool strict_tau) { return Parser(strict_tau, nullptr).run(text); }

ParsedInput parse_input(const std::string& text, const AlphabetPtr& alphabet) {
  return Parser(false, alphabet).run(text);
}

std::string inline_word_text(const std::string& spec) {
  const auto slash = spec.find('/');
  if (slash == std::string::npos) return "word: " + spec + "\n";
  return "word: " + spec.substr(0, slash) + "\nproj: " + spec.substr(slash + 1) + "\n";
}

}  // namespace nanocob
