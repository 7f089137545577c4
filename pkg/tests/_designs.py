"""Parameter sets shared across test modules."""

from chirplike import MultiParams, NoiseSpec

# standard one-component benchmark design: equal amplitudes 10,
# frequency 1.5, frequency rate 0.1
ONE_COMPONENT = MultiParams(sinusoids=((10.0, 10.0, 1.5),), chirps=((10.0, 10.0, 0.1),))

# two-component extension: second component at amplitudes 8
TWO_COMPONENT = MultiParams(
    sinusoids=((10.0, 10.0, 1.5), (8.0, 8.0, 2.5)),
    chirps=((10.0, 10.0, 0.1), (8.0, 8.0, 0.2)),
)

IID_01 = NoiseSpec.iid(0.1)
IID_05 = NoiseSpec.iid(0.5)
MA1_01 = NoiseSpec.ma1(0.1)
