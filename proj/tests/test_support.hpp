#pragma once

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>

#include "cgsp/rng.hpp"
#include "cgsp/types.hpp"

namespace testutil {

using cgsp::Complex;
using cgsp::ComplexMatrix;
using cgsp::ComplexVector;
using cgsp::FeatureSet;
using cgsp::FeatureVector;
using cgsp::RealMatrix;
using cgsp::RealVector;

inline ComplexMatrix random_matrix(cgsp::Rng& rng, int rows, int cols) {
    ComplexMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) a(i, j) = rng.complex_normal();
    }
    return a;
}

inline ComplexMatrix random_hermitian(cgsp::Rng& rng, int n) {
    const ComplexMatrix b = random_matrix(rng, n, n);
    return b + b.adjoint();
}

// PSD with the given rank (rank = n gives HPD almost surely).
inline ComplexMatrix random_psd(cgsp::Rng& rng, int n, int rank) {
    const ComplexMatrix b = random_matrix(rng, n, rank);
    ComplexMatrix k = b * b.adjoint();
    return 0.5 * (k + k.adjoint()).eval();
}

inline ComplexVector random_vector(cgsp::Rng& rng, int n) {
    ComplexVector v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
    return v;
}

inline FeatureSet random_features(cgsp::Rng& rng, int n, int d, double scale = 1.0) {
    FeatureSet out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        FeatureVector z(d);
        for (int j = 0; j < d; ++j) z(j) = scale * rng.complex_normal();
        out.push_back(z);
    }
    return out;
}

inline double max_abs(const ComplexMatrix& a) { return a.cwiseAbs().maxCoeff(); }

// Scratch directory under the system temp root, removed on scope exit.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("cgsp_test_" + tag + "_" + std::to_string(counter()++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

  private:
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::filesystem::path path_;
};

}  // namespace testutil

#define CHECK_ERROR_CODE(expr, code_)                                                  \
    do {                                                                               \
        bool caught_expected_ = false;                                                 \
        try {                                                                          \
            (void)(expr);                                                              \
        } catch (const cgsp::Error& err_) {                                            \
            caught_expected_ = true;                                                   \
            CHECK_MESSAGE(err_.code() == cgsp::ErrorCode::code_,                       \
                          "threw " << cgsp::error_code_name(err_.code()) << ": "       \
                                   << err_.what());                                    \
        }                                                                              \
        CHECK_MESSAGE(caught_expected_, #expr " was expected to throw " #code_);       \
    } while (0)
