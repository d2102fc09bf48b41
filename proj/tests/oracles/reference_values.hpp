#pragma once

// Generated by generate_reference_values.py (mpmath, 40 digits). Do not edit.

#include <array>

namespace koff2d::oracle {

struct BesselRow { double x, j0, j1, y0, y1, i0, i1, k0, k1; };
inline constexpr std::array<BesselRow, 16> kBessel{{
    {1e-12, 1.0, 5.0e-13, -1.7664258668214953006e+1, -6.3661977236758134308e+11, 1.0, 5.0e-13, 2.7746952631586960657e+1, 1.0e+12},
    {1e-6, 9.9999999999975e-1, 4.999999999999375e-7, -8.8690314816594437029, -6.3661977237217501376e+5, 1.00000000000025, 5.000000000000625e-7, 1.3931442073626419413e+1, 9.9999999999278427896e+5},
    {1e-3, 9.99999750000015625e-1, 4.9999993750000260417e-4, -4.471416611375923269, -6.3662216723113942807e+2, 1.000000250000015625, 5.0000006250000260417e-4, 7.0236888005623813436, 9.9999623815608557428e+2},
    {0.1, 9.9750156206604003228e-1, 4.9937526036241997556e-2, -1.5342386513503668441, -6.4589510947020269877, 1.0025015629340956014, 5.0062526047092692114e-2, 2.4270690247020166125, 9.8538447808706061348},
    {0.5, 9.3846980724081290423e-1, 2.4226845767487388638e-1, -4.4451873350670655715e-1, -1.4714723926702430692, 1.0634833707413235193, 2.5789430539089631636e-1, 9.2441907122766586178e-1, 1.6564411200033008937},
    {1, 7.6519768655796655145e-1, 4.4005058574493351596e-1, 8.8256964215676957983e-2, -7.8121282130028871655e-1, 1.2660658777520083356, 5.6515910399248502721e-1, 4.2102443824070833334e-1, 6.0190723019723457474e-1},
    {2.5, -4.8383776468197996327e-2, 4.9709410246427403801e-1, 4.9807035961523188783e-1, 1.4591813796678579888e-1, 3.2898391440501230357, 2.5167162452886984415, 6.2347553200366186029e-2, 7.3890816347747063649e-2},
    {5, -1.7759677131433830435e-1, -3.2757913759146522204e-1, -3.0851762524903378007e-1, 1.478631433912268448e-1, 2.7239871823604446895e+1, 2.4335642142450527199e+1, 3.6910983340425942747e-3, 4.0446134454521642084e-3},
    {10, -2.459357644513483352e-1, 4.347274616886143667e-2, 5.5671167283599391424e-2, 2.4901542420695388392e-1, 2.8157166284662544715e+3, 2.6709883037012546543e+3, 1.7780062316167651811e-5, 1.8648773453825584597e-5},
    {17.5, -1.0311039822868592217e-1, -1.6341996942575490589e-1, -1.6041119250501116909e-1, 9.8572798734216046215e-2, 3.8259652494124127879e+6, 3.714992017685220192e+6, 7.4708351770684484594e-9, 7.6813985958496094129e-9},
    {18, -1.3355805721984110885e-2, -1.8799488548806959401e-1, -1.8755215961141061464e-1, 8.1551322782214420237e-3, 6.2184124207810029499e+6, 6.0431332421156283704e+6, 4.4687533373093829197e-9, 4.5912496277402409128e-9},
    {18.5, 7.7164821422554699014e-2, -1.6663364001001603118e-1, -1.6865634504032312592e-1, -8.1747858496809461329e-2, 1.0110921506235734782e+7, 9.8337418594110942744e+6, 2.6740339670954046823e-9, 2.7453772913993467028e-9},
    {25, 9.6266783275958116174e-2, -1.2535024958028990465e-1, -1.2724943226800613783e-1, -9.8829964783237410053e-2, 5.7745606064663103158e+9, 5.6578651298787013531e+9, 3.4641615622131143554e-12, 3.5327780731999337702e-12},
    {50, 5.5812327669251815005e-2, -9.7511828125175137661e-2, -9.8064995470077079029e-2, -5.6795668562014767942e-2, 2.9325537838493363267e+20, 2.9030785901035567968e+20, 3.4101677497894955139e-23, 3.4441022267175556126e-23},
    {100, 1.9985850304223122424e-2, -7.7145352014112158033e-2, -7.7244313365083152254e-2, -2.0372312002759793305e-2, 1.0737517071310738235e+42, 1.0683693903381624812e+42, 4.6566282291759020189e-45, 4.6798537356369092866e-45},
    {400, -3.8825181530783955714e-2, -9.2220584285863512542e-3, -9.1735198607593585949e-3, 3.8813744980751541801e-2, 1.0418584503521463173e+172, 1.0405553112944216597e+172, 1.1997800432009760003e-175, 1.2012788332610325652e-175},
}};

struct IntegrandRow { double h, k, x, f; };
inline constexpr std::array<IntegrandRow, 9> kIntegrand{{
    {1, 1, 1e-4, 1.0000001082627282038},
    {1, 1, 0.5, 1.8862638254198382527},
    {1, 1, 1, 6.8308320369304130384e-1},
    {1, 1, 3, 2.5540559632080071778e-3},
    {0.1, 10, 3.1622776601683795, 2.035551489979489389e-2},
    {10, 0.1, 0.31622776601683794, 2.6227567103478798619e+1},
    {10, 0.1, 2, 7.1808626867284992551e-2},
    {1, 1, 50, 2.0368782612336805171e-9},
    {0.3, 3, 1000, 5.7296079457750328996e-17},
}};

// Regularized integral by direct high-precision quadrature.
struct RegularizedRow { double h, k, value; };
inline constexpr std::array<RegularizedRow, 6> kRegularized{{
    {1, 1, 1.1159315156584124488},
    {0.1, 10, 1.0115931515658413017e-3},
    {10, 0.1, 2.1593151565841242484e+3},
    {0.1, 0.1, 1.0115931515658411894e+1},
    {10, 10, 2.1593151565841244881e-1},
    {0.3, 3, 3.4492648489917456502e-2},
}};

struct MasterRow { double h, k, x, lhs; };
inline constexpr std::array<MasterRow, 5> kMaster{{
    {1, 1, 1, 6.2955882536858205994e-1},
    {0.1, 10, 0.5, 1.0329755356496257355e-3},
    {10, 0.1, 5, 1.9915427944034679797e+1},
    {1, 1, 1e-6, 8.0236508431933364304},
    {10, 10, 2, 2.8035367152895734844e-1},
}};

struct CompensatedRow { double h, k, x, value; };
inline constexpr std::array<CompensatedRow, 3> kCompensated{{
    {1, 1, 1e-2, 1.0445687417355323804},
    {1, 1, 1e-8, 1.1159309333676320851},
    {10, 0.1, 1e-4, -4.5561896822785060166e+1},
}};

inline constexpr double kExpE1At1 = 5.9634736232319407434e-1;
inline constexpr double kK0OverK1At1 = 6.9948393559377234389e-1;
inline constexpr double kK1OverK0At2 = 1.2280369298189079757;
inline constexpr double kEulerGamma = 5.7721566490153286061e-1;
inline constexpr double kLn2MinusGamma = 1.1593151565841244881e-1;

}  // namespace koff2d::oracle
