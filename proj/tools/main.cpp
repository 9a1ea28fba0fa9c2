#include <cstdio>
int main() { std::puts("growthmech"); return 0; }
