def makeTheIntegerZero(num1: int, num2: int) -> int:
    a = 0
    x, y = (num1, num2)
    while x < y:
        x -= y
        a += 1
        b = x
        c = 0
        cc = 0
        z = 1
        while b:
            c += b % 2
            cc += (b % 2) * z
            z *= 2
            b //= 2
        if c <= a and cc >= a:
            return a
    return -1

assert makeTheIntegerZero(num1=5, num2=7)==-1
