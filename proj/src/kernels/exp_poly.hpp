#pragma once

// Shared constants of the exp() kernel. Cody-Waite range reduction
// x = k*ln2 + r with |r| <= ln2/2, then a degree-13 Taylor polynomial in r.
// The truncation error at |r| = 0.3466 is below 1 ulp of double. Both the
// scalar and the SIMD variants evaluate exactly this scheme so that they
// differ only by fused-multiply-add rounding.

namespace actnext::kernels::detail {

inline constexpr double kExpClamp = 708.0;  // exp(708) is finite in double
inline constexpr double kLog2E = 1.4426950408889634074;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;

// 1/i! for i = 13 .. 2 (Horner order), the trailing +r and +1 are explicit
inline constexpr double kExpCoeff[] = {
    1.6059043836821614599e-10,  // 1/13!
    2.0876756987868098979e-09,  // 1/12!
    2.5052108385441718775e-08,  // 1/11!
    2.7557319223985890653e-07,  // 1/10!
    2.7557319223985892511e-06,  // 1/9!
    2.4801587301587301566e-05,  // 1/8!
    1.9841269841269841253e-04,  // 1/7!
    1.3888888888888889419e-03,  // 1/6!
    8.3333333333333332177e-03,  // 1/5!
    4.1666666666666664354e-02,  // 1/4!
    1.6666666666666665741e-01,  // 1/3!
    5.0000000000000000000e-01,  // 1/2!
};

}  // namespace actnext::kernels::detail
