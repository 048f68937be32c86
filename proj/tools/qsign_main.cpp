#include "qsign/signpattern.hpp"
#include <cstdio>
int main() { std::puts("qsign (placeholder)"); return 0; }
