#include <catch2/catch_amalgamated.hpp>
#include "perciso/perciso.hpp"
TEST_CASE("placeholder test_shell") { CHECK(true); }
