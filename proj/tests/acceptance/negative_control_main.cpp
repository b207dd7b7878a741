// Linked against the fault-injected library. Succeeds only when criteria 1
// and 5 both fail, which shows those checks can detect a wrong M_s.

#include "criteria.hpp"

#include <cstdio>
#include <cstdlib>

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 42;
  const auto outcomes = quatvisc::acceptance::run_criteria({1, 5}, seed);
  bool all_failed = outcomes.size() == 2;
  for (const auto& o : outcomes) all_failed = all_failed && !o.pass;
  std::printf("negative control: %s\n", all_failed ? "criteria 1 and 5 fail as expected" : "a criterion passed");
  return all_failed ? 0 : 1;
}
