"""Generated by tools/gen_erfcx_coeffs.py. Do not edit."""

K = 3.75

COEFFS = (
    1.1775789345674017541,
    -4.5900545806464773309e-3,
    -8.4249133366517915584e-2,
    5.9209939998191890498e-2,
    -2.6658668435305752277e-2,
    9.0749976707052650939e-3,
    -2.4131635404176081909e-3,
    4.9077583652580863229e-4,
    -6.9169733025012063671e-5,
    4.1390279860730101675e-6,
    7.7403830661984906686e-7,
    -2.1886401049234395661e-7,
    1.0764999465670910377e-8,
    4.5219598112182868979e-9,
    -7.7544002088313511065e-10,
    -6.3180883408866844944e-11,
    2.8687950109306698981e-11,
    1.945586854577734723e-13,
    -9.6546967484334389059e-13,
    3.2525481481487398415e-14,
    3.3478119482868053878e-14,
    -1.8645628804193131015e-15,
    -1.2507950530688647085e-15,
    7.418235256624043463e-17,
    5.0681489047961113168e-17,
    -2.2370566594359995974e-18,
    -2.187342944303017665e-18,
    2.6766327399258761745e-20,
    9.7365614017414507665e-20,
    3.3214840905101300581e-21,
    -4.2902867079013274278e-21,
    -4.1342793496030239117e-22,
    1.7694365970204527747e-22,
    3.2970951644287457744e-23,
    -6.1301466171023157725e-24,
    -2.1764425294508512818e-24,
    1.1526245375741722596e-25,
    1.2390920572289769879e-25,
    6.5518080498554313707e-27,
    -5.9140866385899695224e-27,
)
