#include "openboson/csv.hpp"

#include <cstdint>
#include <cstdio>

namespace openboson {

std::string fmt17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::uint64_t fnv1a(std::uint64_t hash, const std::string& text) {
  constexpr std::uint64_t kPrime = 1099511628211ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= kPrime;
  }
  return hash;
}

}  // namespace

std::string params_hash(const SystemParams& params) {
  std::uint64_t hash = 14695981039346656037ULL;  // FNV offset basis
  const double fields[] = {params.omega_s, params.delta,  params.gamma_e,
                           params.gamma_c, params.temp_e, params.temp_c,
                           params.mass,    params.hbar,   params.k_b};
  for (double f : fields) {
    hash = fnv1a(hash, fmt17(f));
    hash = fnv1a(hash, ";");
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace openboson
