#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "massey/galois_q.hpp"
#include "massey/magnus.hpp"
#include "massey/massey.hpp"
#include "massey/report.hpp"
#include "massey/unipotent.hpp"
#include "massey/words.hpp"

namespace py = pybind11;
using namespace massey;

namespace {

std::vector<std::vector<int>> matrix_rows(const UnipotentMatrix& m) {
  std::vector<std::vector<int>> rows;
  rows.reserve(m.size());
  for (int i = 1; i <= m.size(); ++i) {
    std::vector<int> row;
    row.reserve(m.size());
    for (int j = 1; j <= m.size(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<std::vector<int>>> assignment_rows(const FullAssignment& images) {
  std::vector<std::vector<std::vector<int>>> out;
  out.reserve(images.size());
  for (const UnipotentMatrix& m : images) out.push_back(matrix_rows(m));
  return out;
}

std::vector<Character> to_characters(const std::vector<std::vector<int>>& raw) {
  std::vector<Character> chars;
  chars.reserve(raw.size());
  for (const auto& v : raw) chars.push_back(Character{v});
  return chars;
}

PresentationSpec presentation_from_strings(long long p, int d,
                                           const std::vector<std::string>& relator_texts) {
  std::vector<FreeWord> relators;
  relators.reserve(relator_texts.size());
  for (const std::string& t : relator_texts) relators.push_back(parse_word(t, d));
  return make_presentation(p, d, std::move(relators));
}

}  // namespace

PYBIND11_MODULE(masseylift, m) {
  m.doc() = "Exact decision procedures for Massey product vanishing in pro-p groups";

  // Base first: translators run newest-first, so the subclass translators
  // must be registered after the catch-all for Error.
  auto& base_error = py::register_exception<Error>(m, "MasseyError");
  py::register_exception<NotInS2>(m, "NotInS2Error", base_error);
  py::register_exception<FoldTooLarge>(m, "FoldTooLargeError", base_error);
  py::register_exception<BudgetExceeded>(m, "BudgetExceededError", base_error);
  py::register_exception<NotANorm>(m, "NotANormError", base_error);
  py::register_exception<NotDefinedError>(m, "NotDefinedError", base_error);

  py::class_<FreeWord>(m, "FreeWord")
      .def(py::init<int>(), py::arg("generator_count"))
      .def_property_readonly("generator_count", &FreeWord::generator_count)
      .def_property_readonly("letters",
                             [](const FreeWord& w) {
                               std::vector<std::pair<int, long long>> out;
                               for (const Letter& l : w.letters()) out.emplace_back(l.gen, l.exp);
                               return out;
                             })
      .def("__str__", &FreeWord::str)
      .def("__repr__", [](const FreeWord& w) { return "FreeWord(" + w.str() + ")"; })
      .def("__mul__", &word_multiply)
      .def("__pow__", &word_power)
      .def("__eq__", [](const FreeWord& a, const FreeWord& b) { return a == b; })
      .def("inverse", &word_invert);

  m.def("parse_word", &parse_word, py::arg("text"), py::arg("generator_count"));
  m.def("generator", &FreeWord::generator, py::arg("generator_count"), py::arg("gen"),
        py::arg("exp") = 1);
  m.def("commutator", &word_commutator);
  m.def("exponent_sum", &exponent_sum, py::arg("word"), py::arg("gen"));

  py::class_<PresentationSpec>(m, "Presentation")
      .def(py::init(&presentation_from_strings), py::arg("p"), py::arg("generators"),
           py::arg("relators"))
      .def_readonly("p", &PresentationSpec::p)
      .def_readonly("generators", &PresentationSpec::d)
      .def_property_readonly("relators",
                             [](const PresentationSpec& spec) {
                               std::vector<std::string> out;
                               for (const FreeWord& r : spec.relators) out.push_back(r.str());
                               return out;
                             })
      .def("__repr__", [](const PresentationSpec& spec) {
        return "Presentation(p=" + std::to_string(spec.p) +
               ", generators=" + std::to_string(spec.d) + ", relators=" +
               std::to_string(spec.relators.size()) + ")";
      });

  m.def("load_presentation", &load_presentation, py::arg("path"));
  m.def("parse_presentation", [](const std::string& text) { return parse_presentation(text); },
        py::arg("text"));

  m.def("zassenhaus_level", &zassenhaus_level, py::arg("word"), py::arg("p"));

  py::class_<CanonicalDecomposition>(m, "CanonicalDecomposition")
      .def_readonly("p", &CanonicalDecomposition::p)
      .def_readonly("generators", &CanonicalDecomposition::d)
      .def_property_readonly("a",
                             [](const CanonicalDecomposition& dec) {
                               return std::map<int, int>(dec.a);
                             })
      .def_property_readonly("b",
                             [](const CanonicalDecomposition& dec) {
                               std::map<std::pair<int, int>, int> out(dec.b);
                               return out;
                             })
      .def_property_readonly("c",
                             [](const CanonicalDecomposition& dec) {
                               std::map<std::tuple<int, int, int>, int> out;
                               for (const auto& [ijk, v] : dec.c) {
                                 out[{ijk[0], ijk[1], ijk[2]}] = v;
                               }
                               return out;
                             })
      .def("u", &CanonicalDecomposition::u, py::arg("i"), py::arg("j"))
      .def_property_readonly("residual_is_identity",
                             [](const CanonicalDecomposition& dec) {
                               return dec.residual.is_one();
                             })
      .def_property_readonly("normal_form",
                             [](const CanonicalDecomposition& dec) {
                               return decomposition_word(dec).str();
                             });

  m.def("canonical_decompose", &canonical_decompose, py::arg("word"), py::arg("p"));
  m.def("decompose", [](const std::string& text, long long p, int d) {
          return canonical_decompose(parse_word(text, d), p);
        },
        py::arg("text"), py::arg("p"), py::arg("generators"));

  m.def("dual_character", [](int d, int gen) { return dual_character(d, gen).values; },
        py::arg("generators"), py::arg("gen"));

  py::class_<MasseyReport>(m, "MasseyReport")
      .def_property_readonly("verdict",
                             [](const MasseyReport& r) { return to_string(r.verdict); })
      .def_readonly("p", &MasseyReport::p)
      .def_readonly("n", &MasseyReport::n)
      .def_readonly("defining_count", &MasseyReport::defining_count)
      .def_property_readonly("characters",
                             [](const MasseyReport& r) {
                               std::vector<std::vector<int>> out;
                               for (const Character& chi : r.chars) out.push_back(chi.values);
                               return out;
                             })
      .def_property_readonly("lift",
                             [](const MasseyReport& r) -> py::object {
                               if (!r.lift) return py::none();
                               return py::cast(assignment_rows(*r.lift));
                             })
      .def_property_readonly("violation",
                             [](const MasseyReport& r) -> py::object {
                               if (!r.obstruction) return py::none();
                               return py::make_tuple(r.obstruction->relator_index + 1,
                                                     r.obstruction->corner);
                             })
      .def("__repr__", [](const MasseyReport& r) {
        return "MasseyReport(" + to_string(r.verdict) + ")";
      });

  m.def("massey_check",
        [](const PresentationSpec& spec, const std::vector<std::vector<int>>& chars,
           std::uint64_t budget, int threads) {
          CheckOptions opts;
          if (budget != 0) opts.budget = budget;
          opts.threads = threads;
          return massey_check(spec, to_characters(chars), opts);
        },
        py::arg("presentation"), py::arg("characters"), py::arg("budget") = 0,
        py::arg("threads") = 1);

  m.def("check_triple",
        [](const PresentationSpec& spec, const std::vector<int>& gens, std::uint64_t budget,
           int threads) {
          std::vector<Character> chars;
          for (int g : gens) chars.push_back(dual_character(spec.d, g));
          CheckOptions opts;
          if (budget != 0) opts.budget = budget;
          opts.threads = threads;
          return massey_check(spec, chars, opts);
        },
        py::arg("presentation"), py::arg("generators"), py::arg("budget") = 0,
        py::arg("threads") = 1);

  py::class_<ObstructionWitness>(m, "ObstructionWitness")
      .def_property_readonly("relator", [](const ObstructionWitness& w) {
        return w.relator_index + 1;
      })
      .def_property_readonly("pattern",
                             [](const ObstructionWitness& w) { return to_string(w.pattern); })
      .def_readonly("i", &ObstructionWitness::i)
      .def_readonly("j", &ObstructionWitness::j)
      .def_readonly("k", &ObstructionWitness::k)
      .def_property_readonly("triple",
                             [](const ObstructionWitness& w) {
                               std::vector<std::vector<int>> out;
                               for (const Character& chi : w.implied_triple) {
                                 out.push_back(chi.values);
                               }
                               return out;
                             })
      .def_readonly("not_realizable", &ObstructionWitness::not_realizable)
      .def("__repr__", [](const ObstructionWitness& w) {
        return "ObstructionWitness(" + to_string(w.pattern) + ", relator " +
               std::to_string(w.relator_index + 1) + ")";
      });

  m.def("obstruction_scan",
        [](const PresentationSpec& spec, std::uint64_t budget, int threads) {
          CheckOptions opts;
          if (budget != 0) opts.budget = budget;
          opts.threads = threads;
          return obstruction_scan(spec, opts);
        },
        py::arg("presentation"), py::arg("budget") = 0, py::arg("threads") = 1);

  m.def("trace_of_value",
        [](const PresentationSpec& spec, const std::vector<std::vector<std::vector<int>>>& rep,
           std::size_t relator_index) {
          if (rep.empty()) throw Error("empty assignment");
          const int size = static_cast<int>(rep[0].size());
          BarAssignment images;
          for (const auto& rows : rep) {
            UnipotentMatrix m(spec.p, size - 1);
            for (int i = 1; i <= size; ++i) {
              for (int j = i + 1; j <= size; ++j) {
                if (i == 1 && j == size) continue;
                m.set(i, j, rows.at(i - 1).at(j - 1));
              }
            }
            images.push_back(BarUnipotent(m));
          }
          return trace_of_value(spec, images, relator_index);
        },
        py::arg("presentation"), py::arg("rep"), py::arg("relator_index"));

  m.def("cup_trace", &cup_trace, py::arg("presentation"), py::arg("relator_index"),
        py::arg("i"), py::arg("j"));

  m.def("separating_rep",
        [](const PresentationSpec& spec, const std::string& word_text, int n,
           std::uint64_t budget) -> py::object {
          EnumOptions opts;
          if (budget != 0) opts.budget = budget;
          auto rep = separating_rep(spec, parse_word(word_text, spec.d), n, opts);
          if (!rep) return py::none();
          return py::cast(assignment_rows(*rep));
        },
        py::arg("presentation"), py::arg("word"), py::arg("n") = 3, py::arg("budget") = 0);

  m.def("hilbert_symbol",
        [](long long a, long long b, const std::string& place) {
          Place v = place == "infinity" || place == "inf"
                        ? Place::real()
                        : Place::finite(mpz_class(place));
          return hilbert_symbol(SquareClass(a), SquareClass(b), v);
        },
        py::arg("a"), py::arg("b"), py::arg("place"));

  m.def("cup_vanishes",
        [](long long a, long long b) { return cup_vanishes(SquareClass(a), SquareClass(b)); },
        py::arg("a"), py::arg("b"));

  m.def("square_class",
        [](long long a) { return SquareClass(a).representative().get_str(); }, py::arg("a"));

  m.def("norm_solve",
        [](long long a, long long b, unsigned long cap) {
          NormRepresentation nr = norm_solve(SquareClass(a), SquareClass(b), cap);
          return std::make_pair(nr.a1.get_str(), nr.a2.get_str());
        },
        py::arg("a"), py::arg("b"), py::arg("height_cap") = 0);

  py::class_<GaloisReport>(m, "GaloisReport")
      .def_readonly("defined", &GaloisReport::defined)
      .def_property_readonly("verdict",
                             [](const GaloisReport& r) {
                               return std::string(r.defined ? "Vanishes" : "NotDefined");
                             })
      .def_property_readonly("classes",
                             [](const GaloisReport& r) {
                               return std::vector<std::string>{
                                   r.class_a.representative().get_str(),
                                   r.class_b.representative().get_str(),
                                   r.class_c.representative().get_str()};
                             })
      .def_property_readonly("trivial",
                             [](const GaloisReport& r) {
                               return r.certificate && r.certificate->trivial;
                             })
      .def_property_readonly("failure",
                             [](const GaloisReport& r) -> py::object {
                               if (!r.failure) return py::none();
                               return py::make_tuple(
                                   r.failure->first == 0 ? "a,b" : "b,c",
                                   r.failure->second.str());
                             })
      .def_property_readonly("point",
                             [](const GaloisReport& r) -> py::object {
                               if (!r.point) return py::none();
                               std::map<std::string, std::string> out{
                                   {"x", r.point->x.get_str()},
                                   {"y1", r.point->y1.get_str()},
                                   {"y2", r.point->y2.get_str()},
                                   {"y3", r.point->y3.get_str()},
                                   {"y4", r.point->y4.get_str()}};
                               return py::cast(out);
                             })
      .def_property_readonly("identity",
                             [](const GaloisReport& r) -> py::object {
                               if (!r.point) return py::none();
                               return py::make_tuple(r.lhs.get_str(), r.rhs.get_str());
                             })
      .def("__repr__", [](const GaloisReport& r) {
        return std::string("GaloisReport(") + (r.defined ? "Vanishes" : "NotDefined") + ")";
      });

  m.def("galois_triple_check",
        [](long long a, long long b, long long c, unsigned long cap) {
          return galois_triple_check(mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(b)),
                                     mpz_class(static_cast<long>(c)), cap);
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("height_cap") = 0);

  m.def("default_budget", &default_budget);
}
