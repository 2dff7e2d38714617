#include <catch2/catch_amalgamated.hpp>
#include "perciso/perciso.hpp"
TEST_CASE("placeholder test_experiments") { CHECK(true); }
