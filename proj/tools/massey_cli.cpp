#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "massey/galois_q.hpp"
#include "massey/magnus.hpp"
#include "massey/massey.hpp"
#include "massey/report.hpp"
#include "massey/unipotent.hpp"
#include "massey/words.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;  // well-formed negative verdict

std::vector<int> parse_int_list(const std::string& text, char sep) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(sep, start);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(start, end - start);
    if (item.empty()) throw massey::SyntaxError("empty entry in list '" + text + "'");
    out.push_back(std::stoi(item));
    start = end + 1;
  }
  return out;
}

std::vector<massey::Character> characters_from_options(const std::string& triple_opt,
                                                       const std::string& chars_opt, int d) {
  if (!triple_opt.empty() && !chars_opt.empty()) {
    throw massey::Error("--triple and --chars are mutually exclusive");
  }
  std::vector<massey::Character> chars;
  if (!triple_opt.empty()) {
    for (int gen : parse_int_list(triple_opt, ',')) {
      chars.push_back(massey::dual_character(d, gen));
    }
    return chars;
  }
  if (!chars_opt.empty()) {
    std::size_t start = 0;
    while (start <= chars_opt.size()) {
      std::size_t end = chars_opt.find(';', start);
      if (end == std::string::npos) end = chars_opt.size();
      massey::Character chi;
      chi.values = parse_int_list(chars_opt.substr(start, end - start), ',');
      if (chi.d() != d) {
        throw massey::DimensionMismatch("character has " + std::to_string(chi.d()) +
                                        " entries but the presentation has " +
                                        std::to_string(d) + " generators");
      }
      chars.push_back(std::move(chi));
      start = end + 1;
    }
    return chars;
  }
  throw massey::Error("one of --triple or --chars is required");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact decision procedures for Massey product vanishing in pro-p groups"};
  app.require_subcommand(1);

  std::string file;
  std::string word_text;
  std::string triple_opt;
  std::string chars_opt;
  std::string a_text, b_text, c_text;
  long long p_opt = 0;
  int d_opt = 0;
  int n_opt = 0;
  int threads = 1;
  std::uint64_t budget = 0;
  unsigned long height_cap = 0;
  bool as_json = false;

  CLI::App* cmd_decompose =
      app.add_subcommand("decompose", "Normal-form coefficients of a word in S_(2)");
  cmd_decompose->add_option("-f,--file", file, "presentation file supplying p and d");
  cmd_decompose->add_option("-p,--prime", p_opt, "prime p (alternative to --file)");
  cmd_decompose->add_option("-d,--generators", d_opt, "generator count (alternative to --file)");
  cmd_decompose->add_option("-w,--word", word_text, "word to decompose")->required();
  cmd_decompose->add_flag("--json", as_json, "machine-readable output");

  CLI::App* cmd_check =
      app.add_subcommand("check", "Decide whether an n-fold Massey product vanishes");
  cmd_check->add_option("-f,--file", file, "presentation file")->required();
  cmd_check->add_option("--triple", triple_opt,
                        "comma-separated generator indices naming dual-basis characters");
  cmd_check->add_option("--chars", chars_opt,
                        "explicit characters: entries comma-separated, characters "
                        "semicolon-separated");
  cmd_check->add_option("-n,--fold", n_opt, "expected number of characters (cross-check)");
  cmd_check->add_option("--budget", budget, "assignment budget (overrides MASSEY_BUDGET)");
  cmd_check->add_option("--threads", threads, "worker threads");
  cmd_check->add_flag("--json", as_json, "machine-readable output");

  CLI::App* cmd_obstruct =
      app.add_subcommand("obstruct", "Scan relators for non-vanishing obstruction patterns");
  cmd_obstruct->add_option("-f,--file", file, "presentation file")->required();
  cmd_obstruct->add_option("--budget", budget, "assignment budget for witness cross-checks");
  cmd_obstruct->add_option("--threads", threads, "worker threads");
  cmd_obstruct->add_flag("--json", as_json, "machine-readable output");

  CLI::App* cmd_galois =
      app.add_subcommand("galois", "Triple Massey products of quadratic characters over Q");
  cmd_galois->add_option("-a", a_text, "first integer")->required();
  cmd_galois->add_option("-b", b_text, "second integer")->required();
  cmd_galois->add_option("-c", c_text, "third integer")->required();
  cmd_galois->add_option("--height-cap", height_cap, "conic search height cap (0 = automatic)");
  cmd_galois->add_flag("--json", as_json, "machine-readable output");

  CLI::App* cmd_separate =
      app.add_subcommand("separate", "Find a unipotent representation separating a word");
  cmd_separate->add_option("-f,--file", file, "presentation file")->required();
  cmd_separate->add_option("-w,--word", word_text, "word to separate")->required();
  cmd_separate->add_option("-n,--fold", n_opt, "fold size n (image in U_{n+1}); default 3");
  cmd_separate->add_option("--budget", budget, "assignment budget");
  cmd_separate->add_flag("--json", as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (cmd_decompose->parsed()) {
      long long p = p_opt;
      int d = d_opt;
      if (!file.empty()) {
        massey::PresentationSpec spec = massey::load_presentation(file);
        p = spec.p;
        d = spec.d;
      }
      if (p == 0 || d == 0) {
        throw massey::Error("decompose needs either --file or both --prime and --generators");
      }
      massey::FreeWord w = massey::parse_word(word_text, d);
      massey::CanonicalDecomposition dec = massey::canonical_decompose(w, p);
      std::cout << (as_json ? massey::decomposition_json(w, p, dec)
                            : massey::decomposition_text(w, p, dec));
      if (as_json) std::cout << '\n';
      return kExitOk;
    }

    if (cmd_check->parsed()) {
      massey::PresentationSpec spec = massey::load_presentation(file);
      std::vector<massey::Character> chars =
          characters_from_options(triple_opt, chars_opt, spec.d);
      if (n_opt != 0 && n_opt != static_cast<int>(chars.size())) {
        throw massey::Error("--fold disagrees with the number of characters given");
      }
      massey::CheckOptions opts;
      if (budget != 0) opts.budget = budget;
      opts.threads = threads;
      massey::MasseyReport report = massey::massey_check(spec, chars, opts);
      std::cout << (as_json ? massey::check_report_json(report)
                            : massey::check_report_text(report));
      if (as_json) std::cout << '\n';
      return report.verdict == massey::Verdict::Vanishes ? kExitOk : kExitNegative;
    }

    if (cmd_obstruct->parsed()) {
      massey::PresentationSpec spec = massey::load_presentation(file);
      massey::CheckOptions opts;
      if (budget != 0) opts.budget = budget;
      opts.threads = threads;
      std::vector<massey::ObstructionWitness> witnesses = massey::obstruction_scan(spec, opts);
      std::cout << (as_json ? massey::obstruction_report_json(spec.p, witnesses)
                            : massey::obstruction_report_text(spec.p, witnesses));
      if (as_json) std::cout << '\n';
      return witnesses.empty() ? kExitOk : kExitNegative;
    }

    if (cmd_galois->parsed()) {
      mpz_class a, b, c;
      try {
        a = mpz_class(a_text);
        b = mpz_class(b_text);
        c = mpz_class(c_text);
      } catch (const std::invalid_argument&) {
        throw massey::SyntaxError("galois arguments must be integers");
      }
      massey::GaloisReport report = massey::galois_triple_check(a, b, c, height_cap);
      std::cout << (as_json ? massey::galois_report_json(report)
                            : massey::galois_report_text(report));
      if (as_json) std::cout << '\n';
      return report.defined ? kExitOk : kExitNegative;
    }

    if (cmd_separate->parsed()) {
      massey::PresentationSpec spec = massey::load_presentation(file);
      massey::FreeWord w = massey::parse_word(word_text, spec.d);
      int n = n_opt == 0 ? 3 : n_opt;
      massey::EnumOptions opts;
      if (budget != 0) opts.budget = budget;
      std::optional<massey::FullAssignment> rep = massey::separating_rep(spec, w, n, opts);
      std::cout << (as_json ? massey::separate_json(w, n, rep) : massey::separate_text(w, n, rep));
      if (as_json) std::cout << '\n';
      return rep ? kExitOk : kExitNegative;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
