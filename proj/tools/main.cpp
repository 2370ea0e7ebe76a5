#include <cstdio>
int main(){ std::puts("mxbem placeholder"); return 0; }
