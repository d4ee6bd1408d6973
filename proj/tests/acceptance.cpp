#include <cstdio>
int main(){ std::puts("acceptance: not yet implemented"); return 2; }
