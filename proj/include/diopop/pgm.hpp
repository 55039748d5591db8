#ifndef DIOPOP_PGM_HPP
#define DIOPOP_PGM_HPP

#include <cstddef>
#include <ostream>
#include <vector>

namespace diopop {

// Plain-text (P2) grayscale image, maxval 255, one raster row per line.
// Byte-deterministic: single spaces, trailing newline, nothing else.
void write_pgm(std::ostream& os, std::size_t width, std::size_t height,
               const std::vector<unsigned char>& gray);

} // namespace diopop

#endif
