// runs the full acceptance battery; nonzero exit on any failed criterion
#include <iostream>

#include "acceptance.hpp"

int main() { return hqcli::run_acceptance(std::cout) == 0 ? 0 : 1; }
