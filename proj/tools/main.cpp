#include "tfl/analysis.hpp"

#include <cstdio>

int main() {
  std::puts("tfl cli placeholder");
  return 0;
}
