#include <iostream>

int main() {
  std::cout << "mesc: placeholder\n";
  return 0;
}
