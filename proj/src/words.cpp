#include "massey/words.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace massey {

FreeWord::FreeWord(int generator_count) : d_(generator_count) {
  if (d_ < 0) throw IndexError("generator count must be nonnegative");
}

FreeWord::FreeWord(int generator_count, const std::vector<Letter>& letters)
    : FreeWord(generator_count) {
  for (const Letter& l : letters) append(l.gen, l.exp);
}

FreeWord FreeWord::generator(int generator_count, int gen, long long exp) {
  FreeWord w(generator_count);
  w.append(gen, exp);
  return w;
}

void FreeWord::append(int gen, long long exp) {
  if (gen < 1 || gen > d_) {
    throw IndexError("generator index " + std::to_string(gen) +
                     " out of range [1, " + std::to_string(d_) + "]");
  }
  if (exp == 0) return;
  if (!letters_.empty() && letters_.back().gen == gen) {
    letters_.back().exp += exp;
    if (letters_.back().exp == 0) letters_.pop_back();
    return;
  }
  letters_.push_back(Letter{gen, exp});
}

void FreeWord::append(const FreeWord& other) {
  if (other.d_ != d_) {
    throw DimensionMismatch("cannot multiply words over different generator counts");
  }
  for (const Letter& l : other.letters_) append(l.gen, l.exp);
}

long long FreeWord::length() const {
  long long n = 0;
  for (const Letter& l : letters_) n += l.exp < 0 ? -l.exp : l.exp;
  return n;
}

std::string FreeWord::str() const {
  if (letters_.empty()) return "1";
  std::string out;
  bool first = true;
  for (const Letter& l : letters_) {
    if (!first) out += '*';
    first = false;
    out += 'x';
    out += std::to_string(l.gen);
    if (l.exp != 1) {
      out += '^';
      out += std::to_string(l.exp);
    }
  }
  return out;
}

FreeWord word_multiply(const FreeWord& u, const FreeWord& v) {
  FreeWord out = u;
  out.append(v);
  return out;
}

FreeWord word_invert(const FreeWord& u) {
  FreeWord out(u.generator_count());
  const auto& ls = u.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) out.append(it->gen, -it->exp);
  return out;
}

FreeWord word_power(const FreeWord& u, long long e) {
  FreeWord base = e < 0 ? word_invert(u) : u;
  long long n = e < 0 ? -e : e;
  FreeWord out(u.generator_count());
  for (long long i = 0; i < n; ++i) out.append(base);
  return out;
}

FreeWord word_commutator(const FreeWord& u, const FreeWord& v) {
  FreeWord out = word_invert(u);
  out.append(word_invert(v));
  out.append(u);
  out.append(v);
  return out;
}

long long exponent_sum(const FreeWord& u, int gen) {
  long long s = 0;
  for (const Letter& l : u.letters()) {
    if (l.gen == gen) s += l.exp;
  }
  return s;
}

FreeWord word_shift(const FreeWord& u, int offset, int new_generator_count) {
  FreeWord out(new_generator_count);
  for (const Letter& l : u.letters()) out.append(l.gen + offset, l.exp);
  return out;
}

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, int d) : text_(text), d_(d) {}

  FreeWord parse() {
    FreeWord w = parse_word_rule();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return w;
  }

 private:
  std::string_view text_;
  int d_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg + " at offset " + std::to_string(pos_) + " in \"" +
                      std::string(text_) + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  long long parse_integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits_start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits_start) fail("expected integer");
    long long value = 0;
    auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc()) fail("integer out of range");
    return value;
  }

  FreeWord parse_word_rule() {
    FreeWord w = parse_term();
    while (eat('*')) w.append(parse_term());
    return w;
  }

  FreeWord parse_term() {
    FreeWord atom = parse_atom();
    if (eat('^')) return word_power(atom, parse_integer());
    return atom;
  }

  FreeWord parse_atom() {
    char c = peek();
    if (c == '1') {
      // empty word, matching how FreeWord::str() prints it
      ++pos_;
      return FreeWord(d_);
    }
    if (c == 'x') {
      ++pos_;
      long long idx = parse_unsigned_index();
      if (idx < 1 || idx > d_) {
        throw IndexError("generator index " + std::to_string(idx) + " out of range [1, " +
                         std::to_string(d_) + "]");
      }
      return FreeWord::generator(d_, static_cast<int>(idx));
    }
    if (c == '(') {
      ++pos_;
      FreeWord w = parse_word_rule();
      if (!eat(')')) fail("expected ')'");
      return w;
    }
    if (c == '[') {
      ++pos_;
      FreeWord u = parse_word_rule();
      if (!eat(',')) fail("expected ',' in commutator");
      FreeWord v = parse_word_rule();
      if (!eat(']')) fail("expected ']'");
      return word_commutator(u, v);
    }
    fail("expected 'x', '1', '(' or '['");
  }

  long long parse_unsigned_index() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected generator index after 'x'");
    long long value = 0;
    auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc()) fail("generator index out of range");
    return value;
  }
};

}  // namespace

FreeWord parse_word(std::string_view text, int generator_count) {
  if (generator_count < 1) throw IndexError("generator count must be at least 1");
  return WordParser(text, generator_count).parse();
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

PresentationSpec make_presentation(long long p, int d, std::vector<FreeWord> relators) {
  if (!is_prime(p)) throw Error("p must be prime, got " + std::to_string(p));
  if (d < 1) throw Error("generator count must be at least 1");
  for (std::size_t r = 0; r < relators.size(); ++r) {
    if (relators[r].generator_count() != d) {
      throw DimensionMismatch("relator " + std::to_string(r + 1) +
                              " uses a different generator count");
    }
    for (int g = 1; g <= d; ++g) {
      if (exponent_sum(relators[r], g) % p != 0) {
        throw NotInS2("relator " + std::to_string(r + 1) + " (" + relators[r].str() +
                      ") has exponent sum of x" + std::to_string(g) +
                      " not divisible by " + std::to_string(p));
      }
    }
  }
  return PresentationSpec{p, d, std::move(relators)};
}

namespace {

std::string strip(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

PresentationSpec parse_presentation(std::string_view text) {
  long long p = 0;
  int d = 0;
  bool have_p = false;
  bool have_d = false;
  std::vector<std::string> relator_texts;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    std::string line(raw);
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = strip(line);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw SyntaxError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = strip(std::string_view(line).substr(0, eq));
    std::string value = strip(std::string_view(line).substr(eq + 1));
    if (value.empty()) {
      throw SyntaxError("line " + std::to_string(line_no) + ": missing value for '" + key + "'");
    }

    if (key == "p") {
      long long v = 0;
      auto res = std::from_chars(value.data(), value.data() + value.size(), v);
      if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw SyntaxError("line " + std::to_string(line_no) + ": bad integer '" + value + "'");
      }
      p = v;
      have_p = true;
    } else if (key == "generators") {
      int v = 0;
      auto res = std::from_chars(value.data(), value.data() + value.size(), v);
      if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw SyntaxError("line " + std::to_string(line_no) + ": bad integer '" + value + "'");
      }
      d = v;
      have_d = true;
    } else if (key == "relator") {
      relator_texts.push_back(value);
    } else {
      throw SyntaxError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }

  if (!have_p) throw SyntaxError("missing 'p = <prime>' line");
  if (!have_d) throw SyntaxError("missing 'generators = <count>' line");
  if (!is_prime(p)) throw SyntaxError("p must be prime, got " + std::to_string(p));
  if (d < 1) throw SyntaxError("generator count must be at least 1");

  std::vector<FreeWord> relators;
  relators.reserve(relator_texts.size());
  for (const std::string& t : relator_texts) relators.push_back(parse_word(t, d));
  return make_presentation(p, d, std::move(relators));
}

PresentationSpec load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open presentation file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_presentation(buf.str());
}

}  // namespace massey
