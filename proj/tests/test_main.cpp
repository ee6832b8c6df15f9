#include <gtest/gtest.h>

#include "alfeld/linear_solver.hpp"

int main(int argc, char** argv) {
    alfeld::select_blas_kernel(argv);
    ::testing::InitGoogleTest(&argc, argv);
    return RUN_ALL_TESTS();
}
