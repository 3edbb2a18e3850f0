#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <stdexcept>

#include "doctest.h"
#include "latfm/fm_count.hpp"
#include "latfm/parallel.hpp"

using namespace latfm;

TEST_CASE("ordered results for any worker count") {
  auto work = [](std::size_t i) { return fm_count_rho1_via_cosets(PolarizationDegree(i + 1)); };
  const auto serial = parallel_map<std::uint64_t>(120, work, 1);
  for (std::size_t w : {2, 3, 8}) CHECK(parallel_map<std::uint64_t>(120, work, w) == serial);
  CHECK(parallel_map<int>(0, [](std::size_t) { return 1; }, 4).empty());
}

TEST_CASE("lowest-index exception wins") {
  auto fail = [](std::size_t i) -> int {
    if (i == 3 || i == 7) throw std::runtime_error("bad " + std::to_string(i));
    return static_cast<int>(i);
  };
  for (std::size_t w : {1, 4}) {
    try {
      parallel_map<int>(10, fail, w);
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "bad 3");
    }
  }
}

TEST_CASE("worker count from the environment") {
  setenv("LATFM_THREADS", "4", 1);
  CHECK(worker_count() == 4);
  setenv("LATFM_THREADS", "0", 1);
  CHECK(worker_count() == 1);
  setenv("LATFM_THREADS", "junk", 1);
  CHECK(worker_count() == 1);
  setenv("LATFM_THREADS", "1000", 1);
  CHECK(worker_count() == 64);
  unsetenv("LATFM_THREADS");
  CHECK(worker_count() == 1);
}
