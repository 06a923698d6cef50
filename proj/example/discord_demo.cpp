// Energies of the four approximations and the n0n1 discord across the first
// transition, for a small system.

#include <cstdio>

#include "lipkin/lipkin.hpp"

int main() {
  using namespace lipkin;
  const int n = 8;
  const Partition part = parse_partition("1,3:0,2");

  std::printf("%5s %5s %12s %12s %12s\n", "chi", "method", "energy", "mutual_info", "discord");
  for (double chi : {0.5, 1.0, 1.5, 2.5, 4.0}) {
    const ModelParams params = ModelParams::from_chi(n, chi);
    for (Method m : kAllMethods) {
      const MethodState st = solve_method(m, params);
      const auto rho = embed_to_fock(method_rdm(st, Subsystem::n0n1));
      const CorrelationReport rep = quantum_discord(rho, part);
      std::printf("%5.2f %5s %12.6f %12.6f %12.6f\n", chi, std::string(to_string(m)).c_str(), st.energy,
                  rep.mutual_info, rep.discord);
    }
  }
}
