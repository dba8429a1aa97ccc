#include <iostream>

#include "qfc/scenario.hpp"

int main() {
  const bool ok = qfc::run_acceptance(std::cout);
  return ok ? 0 : 4;
}
