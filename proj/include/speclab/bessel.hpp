#pragma once

#include <vector>

namespace speclab {

// J_m(x) by the ascending series (accurate for moderate x).
double besselJSeries(int m, double x);
// J_m(x) by Miller's backward recurrence normalised with
// J_0 + 2 sum J_2k = 1; the series is used for x < 1.
double besselJ(int m, double x);
// J'_m = (J_{m-1} - J_{m+1}) / 2, J'_0 = -J_1.
double besselJPrime(int m, double x);

// Positive zeros of J'_m in increasing order, found by scanning for sign
// changes and bisecting. For m = 0 the leading zero 0 is included.
std::vector<double> besselJPrimeZeros(int m, int count);

// The first `count` Neumann eigenvalues of the unit disk: squares of j'_{m,k}
// with multiplicity 2 for m >= 1, sorted.
struct DiskEigenvalue {
    double value;
    int m, k;
};
std::vector<DiskEigenvalue> diskNeumannReference(int count);

}  // namespace speclab
