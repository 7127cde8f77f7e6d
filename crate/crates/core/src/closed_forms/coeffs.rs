// Generated by scripts/gen_series_coeffs.py. Do not edit by hand.
//
// Coefficients c_k of the expansion D(omega) = sum_k c_k omega^(2k) of each
// closed form about omega = 0, obtained by exact rational power-series
// division and rounded to the nearest f64.

// leading terms: 1/60, -31/45360, 5461/194594400
pub(crate) const SHEAR: [f64; 40] = [
    0.016666666666666666,
    -0.0006834215167548501,
    2.806350028572251e-05,
    -1.1523973455968476e-06,
    4.7321962680319585e-08,
    -1.9432257164708208e-09,
    7.97964828885118e-11,
    -3.2767571092787214e-12,
    1.3455652134706436e-13,
    -5.525419441604067e-15,
    2.268954317487807e-16,
    -9.317217904007694e-18,
    3.8260157466228067e-19,
    -1.5711123904389027e-20,
    6.451604768144185e-22,
    -2.649282402560202e-23,
    1.0878994452932206e-24,
    -4.4673425601044536e-26,
    1.8344663779051363e-27,
    -7.533039712955672e-29,
    3.093362080681412e-30,
    -1.2702560091035515e-31,
    5.216170259345281e-33,
    -2.1419644527940338e-34,
    8.795747625019277e-36,
    -3.6118795614051916e-37,
    1.4831796593377093e-38,
    -6.090518425307873e-40,
    2.501006163041544e-41,
    -1.027011395545626e-42,
    4.2173123048119963e-44,
    -1.7317941313464738e-45,
    7.111427128467749e-47,
    -2.920231388253228e-48,
    1.1991617444551935e-49,
    -4.924229275629331e-51,
    2.0220820144643124e-52,
    -8.303463231202794e-54,
    3.40972824735807e-55,
    -1.4001683872269545e-56,
];

// leading terms: 1/3780, -1/1496880, 1/583783200
pub(crate) const POISEUILLE: [f64; 40] = [
    0.00026455026455026457,
    -6.680562236117792e-07,
    1.7129646759276389e-09,
    -4.396063772814257e-12,
    1.128243779248175e-14,
    -2.8956320068644596e-17,
    7.43162659582012e-20,
    -1.9073236672379158e-22,
    4.895137730183847e-25,
    -1.2563349268032933e-27,
    3.224378016125001e-30,
    -8.275351873983275e-33,
    2.1238653872395245e-35,
    -5.450891094184808e-38,
    1.398968781127953e-40,
    -3.5904471704792344e-43,
    9.214866734630352e-46,
    -2.3649914594249042e-48,
    6.069740088734018e-51,
    -1.557796101037239e-53,
    3.998076782416185e-56,
    -1.02610463252875e-58,
    2.6334929872473846e-61,
    -6.758848068729323e-64,
    1.734655358392068e-66,
    -4.4519852818115165e-69,
    1.1426000475298216e-71,
    -2.9324779530356566e-74,
    7.526191657029274e-77,
    -1.9315937499103955e-79,
    4.9574267899598227e-82,
    -1.2723213863656066e-84,
    3.2654071936711723e-87,
    -8.380653076136708e-90,
    2.1508908940571282e-92,
    -5.5202519375381503e-95,
    1.4167702108038367e-97,
    -3.6361344607693935e-100,
    9.332122962476198e-103,
    -2.3950852182828212e-105,
];

// leading terms: 1/960, -31/11612160, 5461/797058662400
pub(crate) const POWER_1: [f64; 40] = [
    0.0010416666666666667,
    -2.669615299823633e-06,
    6.851440499443972e-09,
    -1.758418801264721e-11,
    4.5129740410155854e-14,
    -1.158252785486472e-16,
    2.9726506355595514e-19,
    -7.629294668507579e-22,
    1.9580550920664153e-24,
    -5.025339707212031e-27,
    1.289751206449982e-29,
    -3.3101407495933067e-32,
    8.495461548958098e-35,
    -2.180356437673923e-37,
    5.595875124511812e-40,
    -1.4361788681916938e-42,
    3.6859466938521406e-45,
    -9.459965837699617e-48,
    2.4278960354936074e-50,
    -6.231184404148956e-53,
    1.599230712966474e-55,
    -4.104418530115e-58,
    1.0533971948989538e-60,
    -2.703539227491729e-63,
    6.938621433568272e-66,
    -1.7807941127246066e-68,
    4.570400190119286e-71,
    -1.1729911812142626e-73,
    3.0104766628117096e-76,
    -7.726374999641582e-79,
    1.982970715983929e-81,
    -5.089285545462426e-84,
    1.306162877468469e-86,
    -3.352261230454683e-89,
    8.603563576228513e-92,
    -2.2081007750152601e-94,
    5.667080843215347e-97,
    -1.4544537843077574e-99,
    3.732849184990479e-102,
    -9.580340873131285e-105,
];

// leading terms: 1/18432, -67/503193600, 265253/778256252928000
pub(crate) const POWER_3: [f64; 40] = [
    5.425347222222222e-05,
    -1.331495472120472e-07,
    3.4082989889519045e-10,
    -8.745964548140042e-13,
    2.2446252100475364e-15,
    -5.760817002586837e-18,
    1.4785110696265484e-20,
    -3.7945920916676946e-23,
    9.738803767703931e-26,
    -2.499459666503435e-28,
    6.414852145652007e-31,
    -1.6463689573421187e-33,
    4.225398625184326e-36,
    -1.0844466826277467e-38,
    2.7832276000019355e-41,
    -7.143141288091886e-44,
    1.8332840426563575e-46,
    -4.705115362426532e-49,
    1.2075657704228357e-51,
    -3.0992121926312624e-54,
    7.954114343263468e-57,
    -2.0414199174918223e-59,
    5.239295161832552e-62,
    -1.344662778960662e-64,
    3.45107105683617e-67,
    -8.857158557283709e-70,
    2.2731858144000013e-72,
    -5.834121308057643e-75,
    1.4973246455048882e-77,
    -3.8428770600636735e-80,
    9.862726926386796e-83,
    -2.5312644902271057e-85,
    6.496479084646014e-88,
    -1.6673184750225977e-90,
    4.279165469372334e-93,
    -1.0982459193358586e-95,
    2.8186432797953522e-98,
    -7.234035473166085e-101,
    1.8566119949320007e-103,
    -4.7649864484515e-106,
];

// leading terms: 1/92400, -1/38808000, 61/926424135000
pub(crate) const POWER_4: [f64; 40] = [
    1.0822510822510823e-05,
    -2.5767882910740054e-08,
    6.584457128807423e-11,
    -1.689443753388339e-13,
    4.335877294063573e-16,
    -1.1127998201814024e-18,
    2.8559956150942767e-21,
    -7.329900046063717e-24,
    1.8812155945572504e-26,
    -4.8281314776630085e-29,
    1.239137801823047e-31,
    -3.1802416711557902e-34,
    8.162076140423218e-37,
    -2.0947932204741786e-39,
    5.3762775071552414e-42,
    -1.379819237117856e-44,
    3.541299950730997e-47,
    -9.08873061317973e-50,
    2.332618679812735e-52,
    -5.9866554934756844e-55,
    1.5364724765232467e-57,
    -3.943349794699636e-60,
    1.0120589754099895e-62,
    -2.5974448705632406e-65,
    6.666330737180769e-68,
    -1.710910826293863e-70,
    4.3910450455200277e-73,
    -1.1269597629207044e-75,
    2.892337231971804e-78,
    -7.423170674496337e-81,
    1.905153460446814e-83,
    -4.889567904349361e-86,
    1.2549054334781154e-88,
    -3.2207092278483216e-91,
    8.265935945147239e-94,
    -2.1214487932809735e-96,
    5.444688916510992e-99,
    -1.3973769949794583e-101,
    3.58636185839081e-104,
    -9.204381799279198e-107,
];

// leading terms: 25/11501568, -305/60643344384, 355273/27687610692403200
pub(crate) const POWER_5: [f64; 40] = [
    2.1736166755698006e-06,
    -5.029405998269292e-09,
    1.283147917481656e-11,
    -3.2919964855987276e-14,
    8.448703264829283e-17,
    -2.1683528820236591e-19,
    5.565067560987304e-22,
    -1.4282721128015144e-24,
    3.665654039956404e-27,
    -9.407884831298376e-30,
    2.4145294683023244e-32,
    -6.196879168750495e-35,
    1.5904262895203816e-37,
    -4.081822016399921e-40,
    1.0475978096785354e-42,
    -2.6886551310515055e-45,
    6.900421466085185e-48,
    -1.7709901080168343e-50,
    4.545238255530579e-53,
    -1.1665333818647326e-55,
    2.993902749430063e-58,
    -7.683838124474917e-61,
    1.9720536458431614e-63,
    -5.06126693337786e-66,
    1.298971913106943e-68,
    -3.3338056523223097e-71,
    8.556197416826792e-74,
    -2.1959442712179947e-76,
    5.635881230149914e-79,
    -1.4464464174556885e-81,
    3.712298313487957e-84,
    -9.527597152590488e-87,
    2.445253582456874e-89,
    -6.275732471426392e-92,
    1.61066395467024e-94,
    -4.133761894226095e-97,
    1.0609281562803849e-99,
    -2.72286740646735e-102,
    6.988227119163043e-105,
    -1.7935253899257908e-107,
];

// leading terms: 1/2257920, -421/421625917440, 48077/18897673054740480
pub(crate) const POWER_6: [f64; 40] = [
    4.428854875283447e-07,
    -9.985154673512472e-10,
    2.544069836573868e-12,
    -6.526446440968836e-15,
    1.674963369390456e-17,
    -4.298778651988774e-20,
    1.1032795152006929e-22,
    -2.8315619622039487e-25,
    7.267191211200866e-28,
    -1.8651214003406415e-30,
    4.786825799674395e-33,
    -1.2285367178929362e-35,
    3.153034036279234e-38,
    -8.092247866214582e-41,
    2.076871824876652e-43,
    -5.330282324859395e-46,
    1.3680145939866028e-48,
    -3.511003386503915e-51,
    9.01097461549645e-54,
    -2.312662637502439e-56,
    5.935438399417877e-59,
    -1.523327632054898e-61,
    3.909613609686473e-64,
    -1.0034005984928424e-66,
    2.5752231846167907e-69,
    -6.609298878781913e-72,
    1.6962736251370049e-74,
    -4.35347873368639e-77,
    1.1173183856542527e-79,
    -2.867592679989777e-82,
    7.359663891609436e-85,
    -1.888854472792588e-87,
    4.8477366248424615e-90,
    -1.244169454150401e-92,
    3.193155384532078e-95,
    -8.195219128514012e-98,
    2.1032993536643616e-100,
    -5.398108460251842e-103,
    1.3854221415451698e-105,
    -3.555679780087371e-108,
];
