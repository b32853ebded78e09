#include "massey/report.hpp"

#include <sstream>

#include <json.hpp>

namespace massey {

namespace {

using nlohmann::json;

json matrix_json(const UnipotentMatrix& m) {
  json rows = json::array();
  for (int i = 1; i <= m.size(); ++i) {
    json row = json::array();
    for (int j = 1; j <= m.size(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json assignment_json(const FullAssignment& images) {
  json out = json::array();
  for (const UnipotentMatrix& m : images) out.push_back(matrix_json(m));
  return out;
}

json chars_json(const std::vector<Character>& chars) {
  json out = json::array();
  for (const Character& chi : chars) out.push_back(chi.values);
  return out;
}

void print_matrix(std::ostringstream& out, const UnipotentMatrix& m, const std::string& indent) {
  for (int i = 1; i <= m.size(); ++i) {
    out << indent;
    for (int j = 1; j <= m.size(); ++j) {
      if (j > 1) out << ' ';
      out << m.at(i, j);
    }
    out << '\n';
  }
}

void print_assignment(std::ostringstream& out, const FullAssignment& images) {
  for (std::size_t g = 0; g < images.size(); ++g) {
    out << "  x" << (g + 1) << " ->\n";
    print_matrix(out, images[g], "    ");
  }
}

std::string character_name(const Character& chi, long long p) {
  // Negated dual-basis characters print as -chi_g.
  int hits = 0;
  int gen = 0;
  for (int g = 1; g <= chi.d(); ++g) {
    if (chi(g) != 0) {
      ++hits;
      gen = g;
    }
  }
  if (hits == 1) {
    long long v = chi(gen);
    if (v == 1) return "chi_" + std::to_string(gen);
    if ((v + 1) % p == 0) return "-chi_" + std::to_string(gen);
  }
  std::string out = "(";
  for (int g = 1; g <= chi.d(); ++g) {
    if (g > 1) out += ",";
    out += std::to_string(chi(g));
  }
  return out + ")";
}

json witness_json(const ObstructionWitness& w) {
  json item;
  item["relator"] = w.relator_index + 1;
  item["pattern"] = to_string(w.pattern);
  item["i"] = w.i;
  item["j"] = w.j;
  if (w.pattern == ObPattern::Ob1) {
    item["k"] = w.k;
  } else {
    item["k"] = nullptr;
  }
  item["triple"] = chars_json(w.implied_triple);
  item["not_realizable"] = w.not_realizable;
  return item;
}

}  // namespace

std::string check_report_text(const MasseyReport& report) {
  std::ostringstream out;
  out << "verdict: " << to_string(report.verdict) << '\n';
  out << "p = " << report.p << ", n = " << report.n << ", generators = " << report.d << '\n';
  out << "characters:";
  for (const Character& chi : report.chars) out << ' ' << character_name(chi, report.p);
  out << '\n';
  switch (report.verdict) {
    case Verdict::NotDefined:
      out << "no defining representation exists; the product is not defined\n";
      break;
    case Verdict::Vanishes:
      out << "a defining representation lifts; witness:\n";
      print_assignment(out, *report.lift);
      break;
    case Verdict::DoesNotVanish:
      out << "defining representations: " << report.defining_count << ", none lifts\n";
      out << "sample obstruction: relator " << (report.obstruction->relator_index + 1)
          << " keeps corner value " << report.obstruction->corner << '\n';
      break;
  }
  return out.str();
}

std::string check_report_json(const MasseyReport& report) {
  json j;
  j["verdict"] = to_string(report.verdict);
  j["p"] = report.p;
  j["n"] = report.n;
  j["generators"] = report.d;
  j["triple"] = chars_json(report.chars);
  j["defining_count"] = report.defining_count;
  j["witness"] = report.lift ? assignment_json(*report.lift) : json(nullptr);
  if (report.obstruction) {
    j["violation"] = {{"relator", report.obstruction->relator_index + 1},
                      {"corner", report.obstruction->corner}};
  } else {
    j["violation"] = nullptr;
  }
  j["obstructions"] = json::array();
  return j.dump(2);
}

std::string obstruction_report_text(long long p,
                                    const std::vector<ObstructionWitness>& witnesses) {
  std::ostringstream out;
  if (witnesses.empty()) {
    out << "no obstruction pattern found\n";
    return out.str();
  }
  for (const ObstructionWitness& w : witnesses) {
    out << "relator " << (w.relator_index + 1) << ": pattern " << to_string(w.pattern) << " (i="
        << w.i << ", j=" << w.j;
    if (w.pattern == ObPattern::Ob1) out << ", k=" << w.k;
    out << "); triple <";
    for (std::size_t t = 0; t < w.implied_triple.size(); ++t) {
      if (t) out << ", ";
      out << character_name(w.implied_triple[t], p);
    }
    out << "> is defined and does not vanish\n";
  }
  if (p == 2) {
    out << "not realizable as G_F(2)\n";
  }
  return out.str();
}

std::string obstruction_report_json(long long p,
                                    const std::vector<ObstructionWitness>& witnesses) {
  json j;
  j["verdict"] = nullptr;
  j["triple"] = nullptr;
  j["witness"] = nullptr;
  j["p"] = p;
  json arr = json::array();
  for (const ObstructionWitness& w : witnesses) arr.push_back(witness_json(w));
  j["obstructions"] = std::move(arr);
  j["not_realizable"] = (p == 2 && !witnesses.empty());
  return j.dump(2);
}

std::string galois_report_text(const GaloisReport& report) {
  std::ostringstream out;
  out << "triple (" << report.a.get_str() << ", " << report.b.get_str() << ", "
      << report.c.get_str() << ")\n";
  out << "square classes (" << report.class_a.representative().get_str() << ", "
      << report.class_b.representative().get_str() << ", "
      << report.class_c.representative().get_str() << ")\n";
  if (!report.defined) {
    out << "verdict: NotDefined\n";
    const auto& [pair, place] = *report.failure;
    out << "cup product of (" << (pair == 0 ? "a, b" : "b, c") << ") does not vanish at place "
        << place.str() << '\n';
    return out.str();
  }
  out << "verdict: Vanishes\n";
  const GaloisCertificate& cert = *report.certificate;
  if (cert.trivial) {
    out << "a square-class entry is trivial; vanishing needs no point\n";
    return out.str();
  }
  const SplittingPoint& pt = *report.point;
  out << "splitting point: x = " << pt.x.get_str() << ", y1 = " << pt.y1.get_str()
      << ", y2 = " << pt.y2.get_str() << ", y3 = " << pt.y3.get_str()
      << ", y4 = " << pt.y4.get_str() << '\n';
  out << "identity: b*x^2 = " << report.lhs.get_str() << " = quartic side = "
      << report.rhs.get_str() << '\n';
  if (cert.norm_ab) {
    out << "b = (" << cert.norm_ab->a1.get_str() << ")^2 - a*(" << cert.norm_ab->a2.get_str()
        << ")^2 over the squarefree classes\n";
  }
  if (cert.norm_cb) {
    out << "b = (" << cert.norm_cb->a1.get_str() << ")^2 - c*(" << cert.norm_cb->a2.get_str()
        << ")^2 over the squarefree classes\n";
  }
  return out.str();
}

std::string galois_report_json(const GaloisReport& report) {
  json j;
  j["a"] = report.a.get_str();
  j["b"] = report.b.get_str();
  j["c"] = report.c.get_str();
  j["classes"] = {report.class_a.representative().get_str(),
                  report.class_b.representative().get_str(),
                  report.class_c.representative().get_str()};
  j["defined"] = report.defined;
  if (!report.defined) {
    j["verdict"] = "NotDefined";
    const auto& [pair, place] = *report.failure;
    j["failure"] = {{"pair", pair == 0 ? "a,b" : "b,c"}, {"place", place.str()}};
    return j.dump(2);
  }
  j["verdict"] = "Vanishes";
  const GaloisCertificate& cert = *report.certificate;
  j["trivial_vanishing"] = cert.trivial;
  if (!cert.trivial) {
    const SplittingPoint& pt = *report.point;
    j["point"] = {{"x", pt.x.get_str()},
                  {"y1", pt.y1.get_str()},
                  {"y2", pt.y2.get_str()},
                  {"y3", pt.y3.get_str()},
                  {"y4", pt.y4.get_str()}};
    j["identity"] = {{"lhs", report.lhs.get_str()}, {"rhs", report.rhs.get_str()}};
    if (cert.norm_ab) {
      j["norm_ab"] = {{"a1", cert.norm_ab->a1.get_str()}, {"a2", cert.norm_ab->a2.get_str()}};
    }
    if (cert.norm_cb) {
      j["norm_cb"] = {{"a1", cert.norm_cb->a1.get_str()}, {"a2", cert.norm_cb->a2.get_str()}};
    }
  }
  return j.dump(2);
}

std::string decomposition_text(const FreeWord& w, long long p,
                               const CanonicalDecomposition& dec) {
  std::ostringstream out;
  out << "word: " << w.str() << '\n';
  out << "p = " << p << ", generators = " << dec.d << '\n';
  out << "filtration level: ";
  int level = zassenhaus_level(w, p);
  if (level == 0) {
    out << "identity";
  } else if (level >= 4) {
    out << ">=4";
  } else {
    out << level;
  }
  out << '\n';
  if (p == 2 || p == 3) {
    out << "a:";
    if (dec.a.empty()) out << " (none)";
    for (const auto& [i, v] : dec.a) out << " a_" << i << " = " << v;
    out << '\n';
  }
  out << "b:";
  if (dec.b.empty()) out << " (none)";
  for (const auto& [ij, v] : dec.b) out << " b_" << ij.first << ij.second << " = " << v;
  out << '\n';
  out << "c:";
  if (dec.c.empty()) out << " (none)";
  for (const auto& [ijk, v] : dec.c) out << " c_" << ijk[0] << ijk[1] << ijk[2] << " = " << v;
  out << '\n';
  out << "normal form: " << decomposition_word(dec).str() << " * r' with r' in S_(4)\n";
  return out.str();
}

std::string decomposition_json(const FreeWord& w, long long p,
                               const CanonicalDecomposition& dec) {
  json j;
  j["word"] = w.str();
  j["p"] = p;
  j["generators"] = dec.d;
  j["level"] = zassenhaus_level(w, p);
  json a = json::object();
  for (const auto& [i, v] : dec.a) a[std::to_string(i)] = v;
  json b = json::object();
  for (const auto& [ij, v] : dec.b) {
    b[std::to_string(ij.first) + "," + std::to_string(ij.second)] = v;
  }
  json c = json::object();
  for (const auto& [ijk, v] : dec.c) {
    c[std::to_string(ijk[0]) + "," + std::to_string(ijk[1]) + "," + std::to_string(ijk[2])] = v;
  }
  j["a"] = std::move(a);
  j["b"] = std::move(b);
  j["c"] = std::move(c);
  j["normal_form"] = decomposition_word(dec).str();
  j["residual_in_S4"] = dec.residual.is_one();
  return j.dump(2);
}

std::string separate_text(const FreeWord& w, int n, const std::optional<FullAssignment>& rep) {
  std::ostringstream out;
  out << "word: " << w.str() << '\n';
  if (!rep) {
    out << "no unipotent representation of fold " << n << " separates the word\n";
    return out.str();
  }
  out << "separating representation into U_" << (n + 1) << ":\n";
  print_assignment(out, *rep);
  out << "word image:\n";
  print_matrix(out, evaluate_word(*rep, w), "  ");
  return out.str();
}

std::string separate_json(const FreeWord& w, int n, const std::optional<FullAssignment>& rep) {
  json j;
  j["word"] = w.str();
  j["n"] = n;
  j["found"] = rep.has_value();
  if (rep) {
    j["assignment"] = assignment_json(*rep);
    j["image"] = matrix_json(evaluate_word(*rep, w));
  } else {
    j["assignment"] = nullptr;
  }
  return j.dump(2);
}

}  // namespace massey
