def is_prime(num):
    if num < 2:
        return False
    # Trial division up to the square root
    divisor = 2
    while divisor * divisor <= num:
        if num % divisor == 0:
            return False
        divisor += 1
    return True


def count_primes(n):
    count = 0
    i = 2
    while i < n + 1:
        if is_prime(i):
            count += 1
        i += 1

    return count


def main():
    # Read the input
    n = int(input())

    result = count_primes(n)
    # Output the answer
    print(result)


if __name__ == "__main__":
    main()
