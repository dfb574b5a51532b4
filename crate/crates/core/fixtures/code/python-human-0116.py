def main():
    n = int(input())
    arr = list(map(int, input().split()))

    vbq = int(input())
    xwz = 0
    for i in range(n):
        for j in range(i + 1, n):
            if arr[i]  + arr[j] == vbq:
                xwz += 1
    print(xwz)


if __name__ == "__main__":
    main( )
