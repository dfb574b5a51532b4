import java.util.*;

class Main {
    static Scanner sc = new Scanner(System.in);

    static void solve() {
        int inputSize = sc.nextInt();
        int elementCount = 0;
        for (int i = 2; i < inputSize + 1; i++) {
            boolean isPrimeNumber = true;
            int currentDivisor = 2;
            while (currentDivisor*currentDivisor <= i) {
                if (i % currentDivisor == 0) {
                    isPrimeNumber = false ;
                    break;
                }
                currentDivisor++ ;
            }
            if(isPrimeNumber) {
                elementCount++;
            }
        }
        System.out.println(elementCount );
    }


    static void solve2() {
        int numberOfElements = sc.nextInt();
        int[] inputNumbers  = new int[numberOfElements];
        for (int i = 0; i < numberOfElements; i++) {
            inputNumbers[i] = sc.nextInt();
        }

        int maximumSumSoFar = inputNumbers[0];
        int bw  = 0;
        for (int index = 0; index < numberOfElements; index++) {
            bw += inputNumbers[index] ;
            if(bw > maximumSumSoFar) {
                maximumSumSoFar = bw;
            }
            if(bw  < 0) {
                bw = 0;
            }
        }
        System.out.println(maximumSumSoFar);
    }


    public static void main(String[] args ) {
        solve();
        solve2() ;
    }
}
