// Writes the procedural stand-in test image as a PGM.

#include "deblur/pgm.hpp"
#include "deblur/scenario.hpp"

#include <iostream>

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make-standin OUT.pgm\n";
    return 1;
  }
  try {
    deblur::save_image(deblur::standin_image(), argv[1]);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
