#include <iostream>

int main() {
    std::cout << "scopenav\n";
    return 0;
}
