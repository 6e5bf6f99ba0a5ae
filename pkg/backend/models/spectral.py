"""
Spectral point model
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class SpectralPoint:
    """Mellin data A, B, E of the evaluator at one complex argument s"""
    a: float
    s: complex
    A: complex
    B: complex
    E: complex

    def csv_row(self):
        """Row for `a,sigma,gamma,A_re,A_im,B_re,B_im,E_re,E_im`"""
        return [self.a, self.s.real, self.s.imag,
                self.A.real, self.A.imag, self.B.real, self.B.imag, self.E.real, self.E.imag]

    def to_dict(self):
        return {
            'a': self.a,
            's': {'re': self.s.real, 'im': self.s.imag},
            'A': {'re': self.A.real, 'im': self.A.imag},
            'B': {'re': self.B.real, 'im': self.B.imag},
            'E': {'re': self.E.real, 'im': self.E.imag},
        }


SPECTRAL_CSV_HEADER = ['a', 'sigma', 'gamma', 'A_re', 'A_im', 'B_re', 'B_im', 'E_re', 'E_im']
