def main():
    # Read the input
    n = int(input() )
    a = list(map(int, input().split() ))

    q  = int(input())
    for i in range( q):
        gqq = int(input())
        bx = 0
        vv0  = n
        while bx  < vv0:
            m = (bx + vv0) // 2
            if a[m] < gqq:
                bx = m  + 1
            else:
                vv0 = m
        print(bx )

if __name__  == "__main__":
    main( )
