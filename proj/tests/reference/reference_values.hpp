// Generated by reference_values.py; do not edit by hand.
#pragma once

namespace ref {

inline constexpr double kRiccatiTaus[] = {600.00000000000000, 3600.0000000000000, 43200.000000000000, 86400.000000000000};
inline constexpr double kRiccati_600[] = {0.00078812317026189248, -52.966326124011944, 0.21186106727470228, 0.0, 0.0, 158.07532371076759};
inline constexpr double kRiccati_3600[] = {0.00038899901023173302, -152.75135741306453, 0.61099320978806234, 0.0, 0.0, 819.15797881179492};
inline constexpr double kRiccati_43200[] = {6.6632008688482069e-5, -233.34633150112940, 0.93336665867134416, 0.0, 0.0, 7515.9234136628298};
inline constexpr double kRiccati_86400[] = {4.3697664028339845e-5, -239.08014701190499, 0.95630146201837959, 0.0, 0.0, 14400.146260124221};
inline constexpr double kRiccatiDrift_86400[] = {4.3697664028339845e-5, -239.08014701190499, 0.95630146201837959, 5.2856694408679877, 57837.112422871597, 174238.79015197217};
inline constexpr double kValueNoJump = 1916697.5938471603;
inline constexpr double kValuePureTrader = 2642831.0542415009;
inline constexpr double kJumpCoefficientsPos[] = {4.3697683123206604e-5, -239.07786072969029, 0.95630187989996216, 7.3689036733041459, -1434.4886811704395, -178079.69578842704};
inline constexpr double kValueJumpPos = 2020945.3095519545;
inline constexpr double kJumpCoefficientsNeg[] = {4.3697683123206604e-5, -239.07786072969029, 0.95630187989996216, -2.9475614693216584, 573.79547246817580, -27281.427170769333};
inline constexpr double kValueJumpNeg = 1756334.5287202527;
inline constexpr double kValueNoJumpEta200 = 1916704.4729753087;
inline constexpr double kDelayHours[] = {1.0000000000000000, 4.0000000000000000, 12.000000000000000};
inline constexpr double kValueDelay[] = {1924102.9985604482, 1925460.2232804493, 1927958.5136581558};
inline constexpr double kPsiZ[] = {-3.0000000000000000, -0.50000000000000000, 0.0, 0.70000000000000000, 2.4000000000000000, 2.6000000000000000, 5.0000000000000000, 12.000000000000000, 30.000000000000000};
inline constexpr double kPsi[] = {9.9997965649195131, 1.0403607399746661, 0.50000000000000000, 0.14194808845564591, 0.0016684701426468826, 0.00085509905647489693, 1.9343295187553164e-8, 2.3857971696213262e-35, 1.0843724873983491e-200};
inline constexpr double kPsiTilde[] = {3.0003821543170477, 0.69779655740130603, 0.39894228040143268, 0.14287937681061015, 0.0027204440758121862, 0.0014638803720168667, 5.3461655338328150e-8, 1.4605201169845548e-34, 1.6319567340914012e-199};
inline constexpr double kBoundNoJump = 4.2235592229331074e-16;
inline constexpr double kVarianceNoJump = 7098422.6584403205;
inline constexpr double kVarianceTaus[] = {1.0000000000000000, 3600.0000000000000, 86400.000000000000, 180000.00000000000};
inline constexpr double kVarianceStiff[] = {69.445984324833062, 250005.01524010755, 6000120.3608427500, 12500250.751500176};
inline constexpr double kTableHours[] = {1, 8, 24, 50, 24, 24, 24, 24, 24, 24, 24};
inline constexpr double kTableD0[] = {50000, 50000, 50000, 50000, 500, 5000, 500000, 50000, 50000, 50000, 50000};
inline constexpr double kTableY0[] = {50, 50, 50, 50, 50, 50, 50, 500, 40, 30, 20};
inline constexpr double kTableValue[] = {1875543.7787895379, 1879393.7614318722, 1888193.7217904367, 1902493.6573750658, -586806.27944585432, -361806.28945869809, 24388204.972039041, -37487423.059363462, 1613195.9855407793, 1288197.7517912297, 913199.02054178777};
inline constexpr double kTableProbability[] = {0.0, 3.1159519076638990e-70, 9.2996563209658492e-25, 7.6872911403754357e-13, 9.2997531301882612e-25, 9.2997443293086051e-25, 9.2987762829171626e-25, 0.0, 1.6076264724872719e-16, 4.5706339752361545e-10, 2.2278478755955433e-5};
inline constexpr double kTableBound[] = {0.0, 3.9261097231318534e-64, 1.0232587409989660e-17, 3.5073353783274823e-5, 1.0232695868035260e-17, 1.0232686008165850e-17, 1.0231601480016657e-17, 0.0, 2.6978667228777382e-9, 0.012985338139534421, 1262.3288584675378};
inline constexpr double kTableLog10Probability[] = {-544.96635714839929, -69.506409253951133, -24.031533100980048, -12.114226670607051, -24.031528580007357, -24.031528991004856, -24.031574200751930, -2264.3581057806834, -15.793814850974351, -9.3400235564179574, -4.6521144674682325};
inline constexpr double kTableLog10Bound[] = {-540.66618969270034, -63.406037567322659, -16.990014536786379, -4.4550227040378182, -16.990009933602530, -16.990010352073771, -16.990056383932088, -2259.2968572351796, -8.5689795086850334, -1.8865467368146651, 3.1011725108609207};
inline constexpr double kJumpBoundPos = 8.5473062897162029e-11;
inline constexpr double kJumpProbabilityPos = 4.72496956926009e-18;
inline constexpr double kJumpBoundNeg = 844077.37846679719;
inline constexpr double kJumpProbabilityNeg = 0.00070023378233998;

} // namespace ref
