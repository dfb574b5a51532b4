def f( x):
    kzj = 0
    while x != 1:
        if x % 2 == 0:
            x = x // 2
        else:
            x = 3 * x + 1
        kzj += 1
    return kzj


def main():
    n = int(input())

    print(f(n))


if __name__ == "__main__":
    main( )
