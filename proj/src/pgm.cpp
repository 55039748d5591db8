#include "diopop/pgm.hpp"

#include "diopop/errors.hpp"

namespace diopop {

void write_pgm(std::ostream& os, std::size_t width, std::size_t height,
               const std::vector<unsigned char>& gray) {
    if (gray.size() != width * height) throw InvalidParams("pixel count does not match dimensions");
    os << "P2\n" << width << ' ' << height << "\n255\n";
    for (std::size_t i = 0; i < height; ++i) {
        for (std::size_t j = 0; j < width; ++j) {
            if (j) os << ' ';
            os << static_cast<unsigned>(gray[i * width + j]);
        }
        os << '\n';
    }
}

} // namespace diopop
