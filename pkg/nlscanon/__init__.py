# type: ignore
from nlscanon.coeffs import *
from nlscanon.riccati import *
from nlscanon.scattering import *
from nlscanon.solutions import *
from nlscanon.transform import *
from nlscanon.utils import *
from nlscanon.verify import *
