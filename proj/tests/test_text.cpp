#include "doctest.h"
#include "sacsm/text.hpp"

using namespace sacsm;

TEST_CASE("tokenize lowercases and splits on non-alphanumeric") {
    CHECK(tokenize("Noise-Induced Hearing Loss!") ==
          std::vector<std::string>{"noise", "induced", "hearing", "loss"});
}

TEST_CASE("tokenize of empty input is empty") {
    CHECK(tokenize("").empty());
}

TEST_CASE("tokenize drops stopwords") {
    CHECK(tokenize("the of and a").empty());
}

TEST_CASE("tokenize drops single-character tokens") {
    CHECK(tokenize("x y zz") == std::vector<std::string>{"zz"});
}

TEST_CASE("tokenize preserves order and duplicates") {
    CHECK(tokenize("alpha beta alpha") ==
          std::vector<std::string>{"alpha", "beta", "alpha"});
}

TEST_CASE("tokenize handles digits and mixed separators") {
    CHECK(tokenize("TREC-CAR 2017, v2.1") ==
          std::vector<std::string>{"trec", "car", "2017", "v2"});
}
