#include "massey/massey.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace massey {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::NotDefined:
      return "NotDefined";
    case Verdict::Vanishes:
      return "Vanishes";
    case Verdict::DoesNotVanish:
      return "DoesNotVanish";
  }
  return "?";
}

std::string to_string(ObPattern pattern) {
  switch (pattern) {
    case ObPattern::Ob1:
      return "Ob1";
    case ObPattern::Ob2a:
      return "Ob2a";
    case ObPattern::Ob2b:
      return "Ob2b";
  }
  return "?";
}

namespace {

// Validates a claimed lift exactly: prescribed superdiagonal, zero corners,
// every relator mapped to the identity.
void validate_lift(const PresentationSpec& spec, const std::vector<Character>& chars,
                   const FullAssignment& lift) {
  const int n = static_cast<int>(chars.size());
  if (static_cast<int>(lift.size()) != spec.d) throw Error("lift has wrong assignment size");
  for (int g = 1; g <= spec.d; ++g) {
    const UnipotentMatrix& m = lift[g - 1];
    if (m.fold() != n || m.modulus() != spec.p) throw Error("lift has wrong shape");
    for (int i = 1; i <= n; ++i) {
      int want = static_cast<int>((spec.p - (chars[i - 1](g) % spec.p + spec.p) % spec.p) % spec.p);
      if (m.at(i, i + 1) != want) throw Error("lift superdiagonal does not match the characters");
    }
  }
  for (const FreeWord& r : spec.relators) {
    if (!evaluate_word(lift, r).is_identity()) {
      throw Error("lift does not satisfy the relators");
    }
  }
}

}  // namespace

MasseyReport massey_check(const PresentationSpec& spec, const std::vector<Character>& chars,
                          const CheckOptions& opts) {
  if (chars.size() < 3) throw Error("a Massey product needs at least three characters");
  const int threads = opts.threads < 1 ? 1 : opts.threads;

  struct WorkerState {
    std::uint64_t defining_count = 0;
    std::optional<CornerObstruction> obstruction;
    std::exception_ptr error;
  };
  std::vector<WorkerState> states(threads);
  std::atomic<bool> stop{false};
  std::mutex lift_mu;
  std::optional<FullAssignment> lift;

  auto work = [&](int t) {
    WorkerState& st = states[t];
    try {
      for_each_prescribed_assignment(
          spec.p, spec.d, chars, opts.budget, Partition{t, threads},
          [&](const FullAssignment& images) {
            if (stop.load(std::memory_order_relaxed)) return false;
            bool defining = true;
            std::optional<CornerObstruction> bad;
            for (std::size_t r = 0; r < spec.relators.size(); ++r) {
              UnipotentMatrix value = evaluate_word(images, spec.relators[r]);
              if (!value.is_identity_off_corner()) {
                defining = false;
                break;
              }
              if (value.corner() != 0 && !bad) {
                bad = CornerObstruction{r, value.corner()};
              }
            }
            if (!defining) return true;
            ++st.defining_count;
            if (!bad) {
              std::lock_guard<std::mutex> lock(lift_mu);
              if (!lift) lift = images;
              stop.store(true, std::memory_order_relaxed);
              return false;
            }
            if (!st.obstruction) st.obstruction = bad;
            return true;
          });
    } catch (...) {
      st.error = std::current_exception();
      stop.store(true, std::memory_order_relaxed);
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (std::thread& th : pool) th.join();
  }
  for (const WorkerState& st : states) {
    if (st.error) std::rethrow_exception(st.error);
  }

  MasseyReport report;
  report.p = spec.p;
  report.d = spec.d;
  report.n = static_cast<int>(chars.size());
  for (const Character& chi : chars) report.chars.push_back(reduce_character(chi, spec.p));
  for (const WorkerState& st : states) report.defining_count += st.defining_count;

  if (lift) {
    validate_lift(spec, report.chars, *lift);
    report.verdict = Verdict::Vanishes;
    report.lift = std::move(lift);
    return report;
  }
  if (report.defining_count == 0) {
    report.verdict = Verdict::NotDefined;
    return report;
  }
  report.verdict = Verdict::DoesNotVanish;
  for (const WorkerState& st : states) {
    if (st.obstruction) {
      report.obstruction = st.obstruction;
      break;
    }
  }
  if (!report.obstruction) throw Error("internal: defining representation without corner data");
  return report;
}

int trace_of_value(const PresentationSpec& spec, const BarAssignment& rep,
                   std::size_t relator_index) {
  if (relator_index >= spec.relators.size()) throw IndexError("relator index out of range");
  if (static_cast<int>(rep.size()) != spec.d) {
    throw DimensionMismatch("assignment size does not match the generator count");
  }
  FullAssignment images;
  images.reserve(rep.size());
  for (const BarUnipotent& b : rep) images.push_back(b.matrix());
  for (std::size_t r = 0; r < spec.relators.size(); ++r) {
    if (!evaluate_word(images, spec.relators[r]).is_identity_off_corner()) {
      throw Error("representation does not satisfy relator " + std::to_string(r + 1) +
                  " modulo the center");
    }
  }
  int corner = evaluate_word(images, spec.relators[relator_index]).corner();
  return static_cast<int>((spec.p - corner) % spec.p);
}

int cup_trace(const PresentationSpec& spec, std::size_t relator_index, int i, int j) {
  if (relator_index >= spec.relators.size()) throw IndexError("relator index out of range");
  if (i < 1 || i > spec.d || j < 1 || j > spec.d) throw IndexError("index out of range");
  CanonicalDecomposition dec = canonical_decompose(spec.relators[relator_index], spec.p);
  if (i == j) return spec.p == 2 ? dec.a_at(i) : 0;
  return dec.u(i, j);
}

std::vector<ObstructionWitness> obstruction_scan(const PresentationSpec& spec,
                                                 const CheckOptions& opts) {
  const long long p = spec.p;
  const int d = spec.d;
  std::vector<CanonicalDecomposition> decs;
  decs.reserve(spec.relators.size());
  for (const FreeWord& r : spec.relators) decs.push_back(canonical_decompose(r, p));

  auto row_zero = [&](const CanonicalDecomposition& dec, int row) {
    for (int l = 1; l <= d; ++l) {
      if (l != row && dec.u(row, l) != 0) return false;
    }
    return true;
  };

  std::vector<ObstructionWitness> witnesses;
  for (std::size_t r = 0; r < decs.size(); ++r) {
    const CanonicalDecomposition& dec = decs[r];

    // Pattern Ob1: c_ijk != 0 with i, j, k distinct, pair rows k and j zero
    // (and the p = 2 power coefficients a_k, a_j zero), while every other
    // relator has zero u_ki and u_ij.
    for (int j = 3; j <= d; ++j) {
      for (int i = 1; i < j; ++i) {
        for (int k = 1; k < j; ++k) {
          if (k == i) continue;
          if (dec.c_at(i, j, k) == 0) continue;
          if (!row_zero(dec, k) || !row_zero(dec, j)) continue;
          if (p == 2 && (dec.a_at(k) != 0 || dec.a_at(j) != 0)) continue;
          bool others_ok = true;
          for (std::size_t s = 0; s < decs.size() && others_ok; ++s) {
            if (s == r) continue;
            if (decs[s].u(k, i) != 0 || decs[s].u(i, j) != 0) others_ok = false;
          }
          if (!others_ok) continue;
          ObstructionWitness w;
          w.relator_index = r;
          w.pattern = ObPattern::Ob1;
          w.i = i;
          w.j = j;
          w.k = k;
          w.implied_triple = {negate_character(dual_character(d, k), p),
                              negate_character(dual_character(d, i), p),
                              negate_character(dual_character(d, j), p)};
          w.not_realizable = (p == 2);
          witnesses.push_back(std::move(w));
        }
      }
    }

    // Patterns Ob2a / Ob2b: c_iji (resp. c_ijj) != 0 with pair rows i and j
    // zero (and a_i, a_j zero when p = 2), while every other relator has zero
    // u_ij (and zero a_i resp. a_j when p = 2).
    for (int i = 1; i <= d; ++i) {
      for (int j = i + 1; j <= d; ++j) {
        if (!row_zero(dec, i) || !row_zero(dec, j)) continue;
        if (p == 2 && (dec.a_at(i) != 0 || dec.a_at(j) != 0)) continue;
        for (int which = 0; which < 2; ++which) {
          const int k = which == 0 ? i : j;
          if (dec.c_at(i, j, k) == 0) continue;
          bool others_ok = true;
          for (std::size_t s = 0; s < decs.size() && others_ok; ++s) {
            if (s == r) continue;
            if (decs[s].u(i, j) != 0) others_ok = false;
            if (p == 2 && decs[s].a_at(k) != 0) others_ok = false;
          }
          if (!others_ok) continue;
          ObstructionWitness w;
          w.relator_index = r;
          w.pattern = which == 0 ? ObPattern::Ob2a : ObPattern::Ob2b;
          w.i = i;
          w.j = j;
          w.k = 0;
          if (which == 0) {
            w.implied_triple = {negate_character(dual_character(d, j), p),
                                negate_character(dual_character(d, i), p),
                                negate_character(dual_character(d, i), p)};
          } else {
            w.implied_triple = {negate_character(dual_character(d, i), p),
                                negate_character(dual_character(d, j), p),
                                negate_character(dual_character(d, j), p)};
          }
          w.not_realizable = (p == 2);
          witnesses.push_back(std::move(w));
        }
      }
    }
  }

  for (const ObstructionWitness& w : witnesses) {
    MasseyReport check = massey_check(spec, w.implied_triple, opts);
    if (check.verdict != Verdict::DoesNotVanish) {
      throw Error("internal: obstruction witness failed its cross-check (verdict " +
                  to_string(check.verdict) + ")");
    }
  }
  return witnesses;
}

}  // namespace massey
