#include <catch2/catch_amalgamated.hpp>

#include "ea/corpus.hpp"

using namespace ea;

TEST_CASE("every shipped fixture verifies") {
    auto fixtures = corpus_list(EA_CORPUS_DIR);
    REQUIRE_FALSE(fixtures.empty());
    for (auto& fx : fixtures) {
        auto outcome = corpus_verify(fx);
        INFO("fixture " << fx.name);
        for (auto& f : outcome.failures) INFO("  " << f);
        CHECK(outcome.pass);
    }
}

TEST_CASE("every fixture expectation carries a provenance tag") {
    for (auto& fx : corpus_list(EA_CORPUS_DIR)) {
        INFO("fixture " << fx.name);
        const auto& expect = fx.spec.at("expect");
        for (auto it = expect.begin(); it != expect.end(); ++it) {
            if (it.key() == "props") {
                for (auto p = it.value().begin(); p != it.value().end(); ++p)
                    CHECK(p.value().contains("provenance"));
            } else if (it.value().is_array()) {
                for (auto& entry : it.value()) CHECK(entry.contains("provenance"));
            } else {
                CHECK(it.value().contains("provenance"));
            }
        }
    }
}
