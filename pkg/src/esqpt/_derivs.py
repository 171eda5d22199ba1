"""Machine-generated derivative formulas (tools/gen_derivs.py); do not edit by hand."""

from numpy import sqrt


def grad_h1(x, y, px, py, b0, ze):
    x0 = 2*py
    x1 = ze**2
    x2 = px*y
    x3 = py*x
    x4 = x2 - x3
    x5 = x1*x4
    x6 = px**2
    x7 = py**2
    x8 = x**2
    x9 = y**2
    x10 = x6 + x7 + x8 + x9
    x11 = (1/2)*b0**2
    x12 = x10 - 2
    x13 = x11*x12
    x14 = 3*x9
    x15 = x6 - x7
    x16 = sqrt(-x12)
    x17 = b0*ze
    x18 = x16*x17
    x19 = (1/2)*x17*(-x**3 + x*x14 - x*x15 + x0*x2)/x16
    return (-x*x10*x11 + x*x10 - x*x13 - x*x19 - x0*x5 - 1/2*x18*(-x14 + x15 + 3*x8), b0*x16*ze*(px*py + 3*x*y) + 2*px*x1*x4 - x10*x11*y + x10*y - x13*y - x19*y, -px*x10*x11 + px*x10 - px*x13 - px*x19 + 2*x1*x4*y - x18*(px*x - py*y), b0*x16*ze*(x2 + x3) - py*x10*x11 + py*x10 - py*x13 - py*x19 - 2*x*x5)

def hess_h1(x, y, px, py, b0, ze):
    x0 = y**2
    x1 = -x0
    x2 = x**2
    x3 = py**2
    x4 = ze**2
    x5 = b0**2
    x6 = 2*x5
    x7 = px**2
    x8 = x0 + x2 + x3 + x7
    x9 = x8 - 2
    x10 = -x9
    x11 = sqrt(x10)
    x12 = b0*ze
    x13 = x11*x12
    x14 = x*x13
    x15 = 3*x14
    x16 = px*py
    x17 = 3*x0
    x18 = -x3
    x19 = x18 + x7
    x20 = -1/2*x**3 + (1/2)*x*x17 - 1/2*x*x19 + x16*y
    x21 = x12*x20/x10**(3/2)
    x22 = -x17
    x23 = x19 + 3*x2 + x22
    x24 = 1/x11
    x25 = -x7
    x26 = (1/2)*x5
    x27 = x26*x8
    x28 = x26*x9
    x29 = x12*x24
    x30 = x20*x29
    x31 = x18 + x25 + x27 + x28 + x30
    x32 = x*y
    x33 = 2*x4
    x34 = x16 + 3*x32
    x35 = x*x29
    x36 = px*x
    x37 = py*y
    x38 = px*x13
    x39 = x36 - x37
    x40 = py*x
    x41 = px*y
    x42 = x33*(-x40 + x41)
    x43 = x40 + x41
    x44 = -x2
    x45 = x29*y
    x46 = x29*x34
    x47 = x1 + x27 + x28 + x30 + x44
    return (b0*x*x23*x24*ze - x1 - x15 - x2*x21 - x2*x6 + 3*x2 + 2*x3*x4 - x31, 3*b0*x11*y*ze + (1/2)*b0*x23*x24*y*ze + 2*x*y - x16*x33 - x21*x32 - x32*x6 - x34*x35, (1/2)*b0*px*x23*x24*ze + b0*x*x24*x39*ze + 2*px*x - x21*x36 - x33*x37 - x36*x6 - x38, b0*py*x11*ze + (1/2)*b0*py*x23*x24*ze + 2*py*x*x4 + 2*py*x - x21*x40 - x35*x43 - x40*x6 - x42, -x0*x21 - x0*x6 + x15 - x22 - x31 - 2*x34*x45 + 2*x4*x7 - x44, -px*x46 + py*x13 - x21*x41 + x33*x41 + x39*x45 - x41*x6 + 2*x41 + x42, -py*x46 + 2*py*y - x21*x37 - x33*x36 - x37*x6 + x38 - x43*x45, 2*b0*px*x24*x39*ze + 2*x0*x4 - x14 - x18 - x21*x7 - x47 - x6*x7 + 3*x7, b0*py*x24*x39*ze + b0*x11*y*ze + 2*px*py - px*x29*x43 - x16*x21 - x16*x6 - x32*x33, -2*py*x29*x43 + x14 + 2*x2*x4 - x21*x3 - x25 - x3*x6 + 3*x3 - x47)

def grad_extra(x, y, px, py, b0):
    x0 = px*x + py*y
    x1 = b0**2
    x2 = px**2
    x3 = py**2
    x4 = x**2 + y**2
    x5 = -1/2*x1*(x2 + x3 + x4 - 2) + (1/2)*x2 + (1/2)*x3 - 1/2*x4
    x6 = x5*(x1 + 1)
    x7 = x5*(x1 - 1)
    return (px*x0 - x*x6, py*x0 - x6*y, -px*x7 + x*x0, -py*x7 + x0*y)

def hess_extra(x, y, px, py, b0):
    x0 = px**2
    x1 = x**2
    x2 = b0**2
    x3 = x2 + 1
    x4 = x3**2
    x5 = py**2
    x6 = y**2
    x7 = x1 + x6
    x8 = -1/2*x0 + (1/2)*x2*(x0 + x5 + x7 - 2) - 1/2*x5 + (1/2)*x7
    x9 = x3*x8
    x10 = px*py
    x11 = x*y
    x12 = py*y
    x13 = px*x
    x14 = x2 - 1
    x15 = x14*x3
    x16 = px*y
    x17 = py*x
    x18 = x14**2
    x19 = x14*x8
    return (x0 + x1*x4 + x9, x10 + x11*x4, x12 + x13*x15 + 2*x13, x15*x17 + x16, x4*x6 + x5 + x9, x15*x16 + x17, x12*x15 + 2*x12 + x13, x0*x18 + x1 + x19, x10*x18 + x11, x18*x5 + x19 + x6)
