// placeholder
#include <iostream>
int main() { std::cout << "acceptance placeholder\n"; return 1; }
