#pragma once

#include <optional>
#include <string>
#include <vector>

#include "massey/galois_q.hpp"
#include "massey/magnus.hpp"
#include "massey/massey.hpp"
#include "massey/unipotent.hpp"

namespace massey {

// Text and JSON renderings of the same data always agree on the verdict.

std::string check_report_text(const MasseyReport& report);
std::string check_report_json(const MasseyReport& report);

std::string obstruction_report_text(long long p, const std::vector<ObstructionWitness>& witnesses);
std::string obstruction_report_json(long long p, const std::vector<ObstructionWitness>& witnesses);

std::string galois_report_text(const GaloisReport& report);
std::string galois_report_json(const GaloisReport& report);

std::string decomposition_text(const FreeWord& w, long long p, const CanonicalDecomposition& dec);
std::string decomposition_json(const FreeWord& w, long long p, const CanonicalDecomposition& dec);

std::string separate_text(const FreeWord& w, int n, const std::optional<FullAssignment>& rep);
std::string separate_json(const FreeWord& w, int n, const std::optional<FullAssignment>& rep);

}  // namespace massey
