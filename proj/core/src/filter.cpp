#include "camedit/filter.hpp"

namespace camedit {

ImagePlane correlate3x3(const ImagePlane& img, const Kernel3& kernel) {
    ImagePlane out(img.width(), img.height());
    const int w = img.width();
    const int h = img.height();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int ky = 0; ky < 3; ++ky) {
                for (int kx = 0; kx < 3; ++kx) {
                    acc += kernel[static_cast<std::size_t>(ky)][static_cast<std::size_t>(kx)] *
                           img.clamped(x + kx - 1, y + ky - 1);
                }
            }
            out(x, y) = acc;
        }
    }
    return out;
}

ImagePlane correlate2x2(const ImagePlane& img, const Kernel2& kernel) {
    ImagePlane out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            double acc = 0.0;
            for (int ky = 0; ky < 2; ++ky) {
                for (int kx = 0; kx < 2; ++kx) {
                    acc += kernel[static_cast<std::size_t>(ky)][static_cast<std::size_t>(kx)] *
                           img.clamped(x + kx, y + ky);
                }
            }
            out(x, y) = acc;
        }
    }
    return out;
}

}  // namespace camedit
